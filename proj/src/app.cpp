// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/app.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "quadfuse/canonical_map.hpp"
#include "quadfuse/errors.hpp"
#include "quadfuse/fusion_engine.hpp"
#include "quadfuse/metrics.hpp"
#include "quadfuse/nquads.hpp"
#include "quadfuse/policy.hpp"

namespace quadfuse {

namespace {

constexpr std::size_t kIssuesShownPerFile = 5;

struct LoadedFile {
  std::string path;
  std::vector<Quad> quads;
};

std::vector<LoadedFile> load_all(const std::vector<std::string>& paths,
                                 const RunConfig& config, std::ostream& log,
                                 std::size_t& skipped_lines) {
  std::vector<LoadedFile> files;
  for (const std::string& path : paths) {
    ParseOptions options;
    options.default_graph = default_graph_for(path, config.default_graph_base);
    options.strict = config.strict_parse;
    ParseResult parsed;
    try {
      parsed = parse_quads_file(path, options);
    } catch (const ParseError&) {
      log << "error: in " << path << '\n';
      throw;
    }
    if (!parsed.issues.empty()) {
      log << "warning: " << path << ": skipped " << parsed.issues.size()
          << " malformed line(s)\n";
      for (std::size_t i = 0; i < parsed.issues.size() && i < kIssuesShownPerFile; ++i) {
        log << "  " << parsed.issues[i].message << '\n';
      }
    }
    skipped_lines += parsed.issues.size();
    files.push_back({path, std::move(parsed.quads)});
  }
  return files;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) {
    throw IoError("cannot write '" + path + "'");
  }
}

std::vector<std::string> many_valued_set(const RunConfig& config,
                                         const ResolutionPolicy& policy) {
  std::vector<std::string> out = config.many_valued_predicates;
  for (const auto& [property, strategy] : policy.per_property) {
    if (strategy.cardinality == Cardinality::ManyValued) out.push_back(property);
  }
  return out;
}

int run_checked(const RunConfig& config, std::ostream& log) {
  const ResolutionPolicy policy =
      config.policy_path ? parse_policy_file(*config.policy_path) : ResolutionPolicy{};

  std::size_t skipped = 0;
  std::vector<LoadedFile> data_files = load_all(config.data_paths, config, log, skipped);
  const std::vector<LoadedFile> link_files =
      load_all(config.sameas_paths, config, log, skipped);
  const std::vector<LoadedFile> metadata_files =
      load_all(config.metadata_paths, config, log, skipped);

  std::vector<Link> links;
  std::size_t skipped_links = 0;
  const std::vector<std::string> link_predicates = default_link_predicates();
  for (const LoadedFile& f : link_files) {
    LinkExtraction extracted = extract_links(f.quads, link_predicates);
    skipped_links += extracted.skipped;
    std::move(extracted.links.begin(), extracted.links.end(), std::back_inserter(links));
  }
  if (skipped_links > 0) {
    log << "warning: skipped " << skipped_links
        << " link statement(s) whose endpoints are not both IRIs\n";
  }

  std::vector<Quad> metadata;
  for (const LoadedFile& f : metadata_files) {
    metadata.insert(metadata.end(), f.quads.begin(), f.quads.end());
  }
  std::vector<Quad> data;
  for (const LoadedFile& f : data_files) {
    data.insert(data.end(), f.quads.begin(), f.quads.end());
  }

  FusionConfig fusion_config;
  fusion_config.preferred_namespaces = config.preferred_namespaces;
  fusion_config.score_predicate = config.score_predicate;
  fusion_config.timestamp_predicate = config.timestamp_predicate;
  fusion_config.default_source_score = config.default_source_score;
  fusion_config.workers = config.workers;

  const bool want_report = config.report_path.has_value();
  std::vector<Quad> data_copy;
  if (want_report) data_copy = data;
  FusionResult result = fuse(std::move(data), metadata, links, policy, fusion_config);

  ResultWriterConfig writer;
  writer.result_graph_prefix = config.result_graph_prefix;
  writer.source_graph_predicate = config.source_graph_predicate;
  writer.quality_predicate = config.quality_predicate;
  {
    std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write '" + config.output_path + "'");
    }
    serialize_resolved(result.quads, writer, out);
    if (!out.flush()) {
      throw IoError("cannot write '" + config.output_path + "'");
    }
  }

  if (config.canonical_export_path) {
    write_file(*config.canonical_export_path, export_canonical_mapping(result.canonical));
  }

  if (want_report) {
    const std::vector<std::string> many_valued = many_valued_set(config, policy);
    const DatasetStats universe = compute_stats(data_copy, result.canonical, many_valued);
    std::vector<DatasetReport> reports;
    for (const LoadedFile& f : data_files) {
      reports.push_back(make_report(
          f.path, compute_stats(f.quads, result.canonical, many_valued), universe));
    }
    reports.push_back(make_report("all-data", universe, universe));
    std::vector<Quad> fused;
    fused.reserve(result.quads.size());
    for (const ResolvedQuad& r : result.quads) fused.push_back(r.quad);
    reports.push_back(make_report(
        "fused", compute_stats(fused, result.canonical, many_valued), universe));
    write_file(*config.report_path,
               format_report_table(reports) + "\n" + format_report_keyvalue(reports));
  }

  for (const std::string& w : result.warnings) {
    log << "warning: " << w << '\n';
  }
  log << "read " << result.input_quads << " quad(s), skipped " << skipped
      << " malformed line(s); " << result.unique_quads << " unique quad(s) in "
      << result.clusters << " cluster(s); wrote " << result.quads.size()
      << " resolved quad(s)\n";
  return exit_code::kOk;
}

}  // namespace

std::string default_graph_for(const std::string& path,
                              const std::optional<std::string>& base) {
  namespace fs = std::filesystem;
  if (base) {
    return *base + fs::path(path).filename().string();
  }
  std::string uri = "file://";
  for (char c : fs::absolute(fs::path(path)).lexically_normal().generic_string()) {
    if (c == ' ') {
      uri += "%20";
    } else {
      uri.push_back(c);
    }
  }
  return uri;
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    return run_checked(config, log);
  } catch (const PolicySyntaxError& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kPolicy;
  } catch (const UnknownFunction& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kPolicy;
  } catch (const MissingParam& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kPolicy;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kStrictParse;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }
}

}  // namespace quadfuse
