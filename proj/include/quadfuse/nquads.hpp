// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadfuse/model.hpp"

namespace quadfuse {

enum class Severity { Error, Warning };

struct ParseIssue {
  std::size_t line = 0;  // 1-based physical line
  std::string message;
  Severity severity = Severity::Error;
};

struct ParseOptions {
  /// Graph assigned to statements without a graph term (N-Triples lines).
  std::string default_graph;
  /// Abort with ParseError at the first malformed line.
  bool strict = false;
};

struct ParseResult {
  std::vector<Quad> quads;
  std::vector<ParseIssue> issues;
  std::size_t lines = 0;
};

/// Parses a single N-Quads / N-Triples statement line. Blank and comment
/// lines yield an empty optional; malformed lines throw ParseError carrying
/// `line_number`.
std::optional<Quad> parse_quad_line(std::string_view line,
                                    const Node& default_graph,
                                    std::size_t line_number = 1);

/// Streams statements from `in`, handing each quad to `sink`. Returns the
/// issues encountered. Throws IoError if the stream fails, ParseError on the
/// first malformed line in strict mode.
std::vector<ParseIssue> parse_quads(std::istream& in, const ParseOptions& options,
                                    const std::function<void(Quad&&)>& sink);

ParseResult parse_quads(std::istream& in, const ParseOptions& options);
ParseResult parse_quads(std::string_view text, const ParseOptions& options);

/// Opens and parses a file. Throws IoError when it cannot be read.
ParseResult parse_quads_file(const std::string& path, const ParseOptions& options);

/// Canonical N-Quads term syntax.
std::string serialize_node(const Node& node);
std::string serialize_quad(const Quad& quad);

void serialize_quads(std::span<const Quad> quads, std::ostream& out);
std::string serialize_quads(std::span<const Quad> quads);

struct ResultWriterConfig {
  std::string result_graph_prefix{vocab::kResultGraphPrefix};
  std::string source_graph_predicate{vocab::kSourceGraph};
  std::string quality_predicate{vocab::kQuality};
  std::string annotation_graph{vocab::kAnnotationGraph};
};

/// Writes each resolved quad into a freshly minted graph
/// `<prefix><n>` (n counts from 1 in output order), followed by one
/// source-graph annotation per source and one xsd:double quality annotation,
/// all in the annotation graph.
void serialize_resolved(std::span<const ResolvedQuad> resolved,
                        const ResultWriterConfig& config, std::ostream& out);
std::string serialize_resolved(std::span<const ResolvedQuad> resolved,
                               const ResultWriterConfig& config);

}  // namespace quadfuse
