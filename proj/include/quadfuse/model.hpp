// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quadfuse {

enum class NodeKind : std::uint8_t { Uri = 0, Blank = 1, Literal = 2 };

/// An RDF term: IRI, blank node or literal.
///
/// Nodes are immutable values. The total order used for sorting and
/// deduplication ranks kinds Uri < Blank < Literal, then compares the UTF-8
/// bytes of the IRI / label, or of (lexical form, datatype, language) for
/// literals. Equality is term equality; no value-space coercion happens.
class Node {
 public:
  /// An empty IRI. Only useful as a placeholder before assignment.
  Node() = default;

  static Node uri(std::string iri);
  static Node blank(std::string label);
  static Node literal(std::string lexical);
  static Node typed_literal(std::string lexical, std::string datatype);
  /// The language tag is lowercased.
  static Node lang_literal(std::string lexical, std::string language);

  NodeKind kind() const noexcept { return kind_; }
  bool is_uri() const noexcept { return kind_ == NodeKind::Uri; }
  bool is_blank() const noexcept { return kind_ == NodeKind::Blank; }
  bool is_literal() const noexcept { return kind_ == NodeKind::Literal; }

  /// IRI, blank-node label, or literal lexical form.
  const std::string& value() const noexcept { return value_; }

  bool has_datatype() const noexcept { return tag_kind_ == TagKind::Datatype; }
  bool has_language() const noexcept { return tag_kind_ == TagKind::Language; }
  std::string_view datatype() const noexcept {
    return has_datatype() ? std::string_view(tag_) : std::string_view();
  }
  std::string_view language() const noexcept {
    return has_language() ? std::string_view(tag_) : std::string_view();
  }

  /// Literal without datatype, with a language tag, or typed xsd:string.
  bool is_string_literal() const noexcept;

 private:
  enum class TagKind : std::uint8_t { None, Datatype, Language };

  Node(NodeKind kind, std::string value, TagKind tag_kind, std::string tag)
      : kind_(kind), tag_kind_(tag_kind), value_(std::move(value)),
        tag_(std::move(tag)) {}

  NodeKind kind_ = NodeKind::Uri;
  TagKind tag_kind_ = TagKind::None;
  std::string value_;
  std::string tag_;
};

std::strong_ordering node_compare(const Node& a, const Node& b) noexcept;

inline bool term_equals(const Node& a, const Node& b) noexcept {
  return node_compare(a, b) == std::strong_ordering::equal;
}

inline std::strong_ordering operator<=>(const Node& a, const Node& b) noexcept {
  return node_compare(a, b);
}
inline bool operator==(const Node& a, const Node& b) noexcept {
  return term_equals(a, b);
}

/// Human-readable N-Triples-like rendering, for diagnostics and test output.
std::string to_string(const Node& node);

struct Quad {
  Node subject;
  Node predicate;
  Node object;
  Node graph;
};

/// Builds a quad and checks positional constraints: subject is an IRI or
/// blank node, predicate and graph name are IRIs. Throws InvalidTerm.
Quad make_quad(Node subject, Node predicate, Node object, Node graph);

std::strong_ordering quad_compare(const Quad& a, const Quad& b) noexcept;

inline std::strong_ordering operator<=>(const Quad& a, const Quad& b) noexcept {
  return quad_compare(a, b);
}
inline bool operator==(const Quad& a, const Quad& b) noexcept {
  return quad_compare(a, b) == std::strong_ordering::equal;
}

std::string to_string(const Quad& quad);

/// A fused statement together with the graphs it was selected or derived
/// from and its F-quality.
struct ResolvedQuad {
  Quad quad;
  std::vector<Node> sources;  // sorted, unique, non-empty
  double quality = 0.0;       // in [0, 1]
};

/// All quads sharing one subject and one predicate.
///
/// A view over a run of a sorted, deduplicated quad sequence; the referenced
/// storage must outlive the cluster.
class ConflictCluster {
 public:
  /// Throws InvalidTerm if `quads` is empty or mixes subjects/predicates.
  explicit ConflictCluster(std::span<const Quad> quads);

  const Node& subject() const noexcept { return quads_.front().subject; }
  const Node& predicate() const noexcept { return quads_.front().predicate; }
  std::span<const Quad> quads() const noexcept { return quads_; }
  std::size_t size() const noexcept { return quads_.size(); }

 private:
  std::span<const Quad> quads_;
};

namespace vocab {
inline constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view kOwlSameAs = "http://www.w3.org/2002/07/owl#sameAs";
inline constexpr std::string_view kOdcsEquivalent =
    "http://opendata.cz/infrastructure/odcleanstore/equivalent";
inline constexpr std::string_view kOdcsScore =
    "http://opendata.cz/infrastructure/odcleanstore/score";
inline constexpr std::string_view kSourceGraph = "urn:quadfuse:sourceGraph";
inline constexpr std::string_view kQuality = "urn:quadfuse:quality";
inline constexpr std::string_view kInsertedAt = "urn:quadfuse:insertedAt";
inline constexpr std::string_view kResultGraphPrefix = "urn:quadfuse:result:";
inline constexpr std::string_view kAnnotationGraph = "urn:quadfuse:metadata";
}  // namespace vocab

}  // namespace quadfuse
