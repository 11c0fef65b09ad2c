// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "quadfuse/fusion_engine.hpp"

namespace quadfuse {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::size_t count_distinct(std::vector<Node> nodes) {
  std::sort(nodes.begin(), nodes.end());
  return static_cast<std::size_t>(
      std::unique(nodes.begin(), nodes.end()) - nodes.begin());
}

}  // namespace

DatasetStats compute_stats(std::span<const Quad> quads, const CanonicalMap& map,
                           std::span<const std::string> many_valued) {
  DatasetStats stats;
  stats.total_quads = quads.size();

  std::vector<Node> subjects, predicates, canonical_subjects, canonical_predicates;
  subjects.reserve(quads.size());
  predicates.reserve(quads.size());
  for (const Quad& q : quads) {
    subjects.push_back(q.subject);
    predicates.push_back(q.predicate);
  }
  stats.all_subjects = count_distinct(subjects);
  stats.all_predicates = count_distinct(predicates);
  for (Node& n : subjects) n = map.canonical_of(n);
  for (Node& n : predicates) n = map.canonical_of(n);
  stats.unique_subjects = count_distinct(std::move(subjects));
  stats.unique_predicates = count_distinct(std::move(predicates));

  std::set<std::string, std::less<>> excluded;
  for (const std::string& p : many_valued) {
    excluded.emplace(map.canonical_of(p));
  }

  const std::vector<Quad> unique = sort_and_dedupe(
      resolve_uris(std::vector<Quad>(quads.begin(), quads.end()), map));
  const std::vector<ConflictCluster> clusters = cluster_quads(unique);
  stats.cluster_count = clusters.size();
  for (const ConflictCluster& c : clusters) {
    if (excluded.contains(c.predicate().value())) continue;
    ++stats.single_valued_clusters;
    const auto cq = c.quads();
    const bool single = std::all_of(cq.begin(), cq.end(), [&](const Quad& q) {
      return term_equals(q.object, cq.front().object);
    });
    if (single) ++stats.conflict_free_clusters;
  }
  stats.avg_cluster_size =
      clusters.empty() ? 0.0
                       : static_cast<double>(unique.size()) /
                             static_cast<double>(clusters.size());
  return stats;
}

MetricPair completeness(const DatasetStats& dataset, const DatasetStats& universe) {
  return {ratio(dataset.unique_subjects, universe.unique_subjects),
          ratio(dataset.unique_predicates, universe.unique_predicates)};
}

MetricPair conciseness(const DatasetStats& stats) {
  return {ratio(stats.unique_subjects, stats.all_subjects),
          ratio(stats.unique_predicates, stats.all_predicates)};
}

double consistency(const DatasetStats& stats) {
  return ratio(stats.conflict_free_clusters, stats.single_valued_clusters);
}

DatasetReport make_report(std::string name, const DatasetStats& stats,
                          const DatasetStats& universe) {
  return DatasetReport{std::move(name), stats, completeness(stats, universe),
                       conciseness(stats), consistency(stats)};
}

std::string format_report_table(std::span<const DatasetReport> reports) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rows{
      {"Dataset", {}},
      {"Total quads", {}},
      {"All subjects", {}},
      {"Unique subjects", {}},
      {"All predicates", {}},
      {"Unique predicates", {}},
      {"Conflict clusters", {}},
      {"Average cluster size", {}},
      {"Ext. completeness", {}},
      {"Int. completeness", {}},
      {"Ext. conciseness", {}},
      {"Int. conciseness", {}},
      {"Consistency", {}},
  };
  auto pct = [](double v) { return fixed(v * 100.0, 1) + "%"; };
  for (const DatasetReport& r : reports) {
    std::size_t i = 0;
    rows[i++].second.push_back(r.name);
    rows[i++].second.push_back(std::to_string(r.stats.total_quads));
    rows[i++].second.push_back(std::to_string(r.stats.all_subjects));
    rows[i++].second.push_back(std::to_string(r.stats.unique_subjects));
    rows[i++].second.push_back(std::to_string(r.stats.all_predicates));
    rows[i++].second.push_back(std::to_string(r.stats.unique_predicates));
    rows[i++].second.push_back(std::to_string(r.stats.cluster_count));
    rows[i++].second.push_back(fixed(r.stats.avg_cluster_size, 2));
    rows[i++].second.push_back(pct(r.completeness.extensional));
    rows[i++].second.push_back(pct(r.completeness.intensional));
    rows[i++].second.push_back(pct(r.conciseness.extensional));
    rows[i++].second.push_back(pct(r.conciseness.intensional));
    rows[i++].second.push_back(pct(r.consistency));
  }

  std::size_t label_width = 0;
  for (const auto& row : rows) label_width = std::max(label_width, row.first.size());
  std::vector<std::size_t> widths(reports.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.second.size(); ++c) {
      widths[c] = std::max(widths[c], row.second[c].size());
    }
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r].first << std::string(label_width - rows[r].first.size(), ' ');
    for (std::size_t c = 0; c < rows[r].second.size(); ++c) {
      const std::string& cell = rows[r].second[c];
      out << " | " << std::string(widths[c] - cell.size(), ' ') << cell;
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = label_width;
      for (std::size_t w : widths) total += w + 3;
      out << std::string(total, '-') << '\n';
    }
  }
  return out.str();
}

std::string format_report_keyvalue(std::span<const DatasetReport> reports) {
  std::ostringstream out;
  for (const DatasetReport& r : reports) {
    out << "dataset=" << r.name << '\n'
        << "total_quads=" << r.stats.total_quads << '\n'
        << "all_subjects=" << r.stats.all_subjects << '\n'
        << "unique_subjects=" << r.stats.unique_subjects << '\n'
        << "all_predicates=" << r.stats.all_predicates << '\n'
        << "unique_predicates=" << r.stats.unique_predicates << '\n'
        << "conflict_clusters=" << r.stats.cluster_count << '\n'
        << "avg_cluster_size=" << fixed(r.stats.avg_cluster_size, 4) << '\n'
        << "ext_completeness=" << fixed(r.completeness.extensional, 4) << '\n'
        << "int_completeness=" << fixed(r.completeness.intensional, 4) << '\n'
        << "ext_conciseness=" << fixed(r.conciseness.extensional, 4) << '\n'
        << "int_conciseness=" << fixed(r.conciseness.intensional, 4) << '\n'
        << "consistency=" << fixed(r.consistency, 4) << '\n';
  }
  return out.str();
}

}  // namespace quadfuse
