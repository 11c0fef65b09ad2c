// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <ostream>

#include "quadfuse/app.hpp"

namespace quadfuse {

int run_command_line(int argc, const char* const* argv, std::ostream& out,
                     std::ostream& err) {
  RunConfig config;
  std::string default_graph_base;

  CLI::App app{"Fuse RDF quads from several sources into one conflict-resolved dataset"};
  app.name("quadfuse");
  app.add_option("--data", config.data_paths, "N-Quads / N-Triples data files")
      ->required()
      ->expected(1, -1);
  app.add_option("--sameas", config.sameas_paths, "Files with owl:sameAs links")
      ->expected(1, -1);
  app.add_option("--metadata", config.metadata_paths, "Files with graph metadata (scores)")
      ->expected(1, -1);
  app.add_option("--policy", config.policy_path, "Resolution policy file");
  app.add_option("--output", config.output_path, "Resolved output (N-Quads)")->required();
  app.add_option("--export-canonical", config.canonical_export_path,
                 "Write the canonical URI mapping as N-Triples");
  app.add_option("--report", config.report_path, "Write a before/after quality report");
  app.add_option("--default-graph-base", default_graph_base,
                 "Graph IRI prefix for statements without a graph");
  app.add_option("--result-graph-prefix", config.result_graph_prefix,
                 "Prefix for minted result graphs")
      ->capture_default_str();
  app.add_option("--score-predicate", config.score_predicate, "Source score predicate")
      ->capture_default_str();
  app.add_option("--source-predicate", config.source_graph_predicate,
                 "Predicate linking result graphs to sources")
      ->capture_default_str();
  app.add_option("--quality-predicate", config.quality_predicate,
                 "Predicate carrying result quality")
      ->capture_default_str();
  app.add_option("--timestamp-predicate", config.timestamp_predicate,
                 "Graph insertion-time predicate")
      ->capture_default_str();
  app.add_option("--default-score", config.default_source_score,
                 "Score of graphs without metadata")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--prefer-namespace", config.preferred_namespaces,
                 "Preferred namespace for canonical URIs (repeatable, ordered)")
      ->take_all()
      ->allow_extra_args(false);
  app.add_option("--many-valued", config.many_valued_predicates,
                 "Predicates treated as many-valued in the report")
      ->allow_extra_args(false);
  app.add_flag("--strict", config.strict_parse, "Abort on the first malformed line");
  app.add_option("--workers", config.workers, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_code::kBadArguments;
  }
  if (!default_graph_base.empty()) config.default_graph_base = default_graph_base;
  return run(config, err);
}

}  // namespace quadfuse
