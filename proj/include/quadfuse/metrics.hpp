// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quadfuse/canonical_map.hpp"
#include "quadfuse/model.hpp"

namespace quadfuse {

/// Counts behind the completeness, conciseness and consistency metrics.
/// Entities are subjects and attributes are predicates.
struct DatasetStats {
  std::size_t total_quads = 0;
  std::size_t all_subjects = 0;       // distinct subjects as written
  std::size_t unique_subjects = 0;    // distinct subjects after canonicalization
  std::size_t all_predicates = 0;
  std::size_t unique_predicates = 0;
  std::size_t cluster_count = 0;
  /// Clusters of single-valued predicates; the consistency denominator.
  std::size_t single_valued_clusters = 0;
  /// Single-valued clusters with exactly one distinct object.
  std::size_t conflict_free_clusters = 0;
  double avg_cluster_size = 0.0;
};

/// `many_valued` lists predicate IRIs (as configured, canonicalized here)
/// whose clusters are left out of consistency.
DatasetStats compute_stats(std::span<const Quad> quads, const CanonicalMap& map,
                           std::span<const std::string> many_valued = {});

struct MetricPair {
  double extensional = 1.0;
  double intensional = 1.0;
};

/// Unique entities / attributes relative to the universe (all sources
/// combined). An empty universe yields 1.
MetricPair completeness(const DatasetStats& dataset, const DatasetStats& universe);

/// Unique over all entities / attributes; 1 for an empty dataset.
MetricPair conciseness(const DatasetStats& stats);

/// Conflict-free single-valued clusters over all single-valued clusters; 1
/// when there are none.
double consistency(const DatasetStats& stats);

struct DatasetReport {
  std::string name;
  DatasetStats stats;
  MetricPair completeness;
  MetricPair conciseness;
  double consistency = 1.0;
};

DatasetReport make_report(std::string name, const DatasetStats& stats,
                          const DatasetStats& universe);

/// Aligned UTF-8 table, one column per dataset.
std::string format_report_table(std::span<const DatasetReport> reports);

/// `dataset=<name>` followed by one `key=value` line per metric, per dataset.
std::string format_report_keyvalue(std::span<const DatasetReport> reports);

}  // namespace quadfuse
