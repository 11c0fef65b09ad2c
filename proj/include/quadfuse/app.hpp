// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadfuse/model.hpp"

namespace quadfuse {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kBadArguments = 2;
inline constexpr int kIo = 3;
inline constexpr int kPolicy = 4;
inline constexpr int kStrictParse = 5;
}  // namespace exit_code

struct RunConfig {
  std::vector<std::string> data_paths;
  std::vector<std::string> sameas_paths;
  std::vector<std::string> metadata_paths;
  std::optional<std::string> policy_path;
  std::string output_path;
  std::optional<std::string> canonical_export_path;
  std::optional<std::string> report_path;
  /// When set, statements without a graph get `<base><file name>`;
  /// otherwise the file's own file:// URI.
  std::optional<std::string> default_graph_base;
  std::string result_graph_prefix{vocab::kResultGraphPrefix};
  std::string score_predicate{vocab::kOdcsScore};
  std::string source_graph_predicate{vocab::kSourceGraph};
  std::string quality_predicate{vocab::kQuality};
  std::string timestamp_predicate{vocab::kInsertedAt};
  std::vector<std::string> many_valued_predicates;
  bool strict_parse = false;
  unsigned workers = 1;
  double default_source_score = 1.0;
  std::vector<std::string> preferred_namespaces;
};

/// Default graph IRI for statements read from `path`.
std::string default_graph_for(const std::string& path,
                              const std::optional<std::string>& base);

/// Loads inputs, fuses, writes the resolved output and the optional
/// canonical-map export and quality report. Diagnostics go to `log`.
/// Returns one of the exit_code constants.
int run(const RunConfig& config, std::ostream& log);

/// Parses command-line flags into a RunConfig and calls run(). Usage and
/// errors are written to `out` / `err`.
int run_command_line(int argc, const char* const* argv, std::ostream& out,
                     std::ostream& err);

}  // namespace quadfuse
