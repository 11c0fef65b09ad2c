// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quadfuse/model.hpp"

namespace quadfuse {

enum class AggregationMode { Deciding, Mediating };

struct QualityParams {
  bool consider_conflicts = true;
  bool consider_support = true;
  double agree_coefficient = 4.0;
  /// Distance between two dates saturates at this many seconds (one Julian year).
  double date_distance_max = 31'557'600.0;
};

/// Metadata quads indexed by (subject, predicate) for logarithmic lookup.
class MetadataIndex {
 public:
  MetadataIndex() = default;
  explicit MetadataIndex(std::vector<Quad> metadata);

  /// Objects of metadata statements `(subject, predicate, ?, ?)`, in sorted
  /// order.
  std::vector<Node> objects(std::string_view subject,
                            std::string_view predicate) const;

  std::span<const Quad> quads() const noexcept { return quads_; }

 private:
  std::vector<Quad> quads_;  // sorted by quad_compare
};

/// Named-graph quality scores, s(g).
class ScoreLookup {
 public:
  explicit ScoreLookup(double default_score = 1.0);

  /// Reads `(g, score_predicate, "x")` statements. Values outside [0, 1] are
  /// clamped; non-numeric values are ignored; a graph with several distinct
  /// scores keeps the smallest. Each such event appends a warning.
  static ScoreLookup from_metadata(std::span<const Quad> metadata,
                                   std::string_view score_predicate,
                                   double default_score,
                                   std::vector<std::string>* warnings = nullptr);

  /// Stores a score, clamped to [0, 1]. Returns false if clamping happened.
  bool set(std::string graph, double score);

  double score(std::string_view graph) const;
  double score(const Node& graph) const { return score(graph.value()); }
  double default_score() const noexcept { return default_score_; }
  std::size_t size() const noexcept { return scores_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  double default_score_;
  std::unordered_map<std::string, double, Hash, std::equal_to<>> scores_;
};

/// s(g): the metadata score, or the lookup's default.
double source_score(const Node& graph, const ScoreLookup& lookup);

/// s̄(S): maximum (Deciding) or mean (Mediating) of the source scores.
/// Throws EmptySources for an empty set.
double aggregate_score(std::span<const Node> graphs, const ScoreLookup& lookup,
                       AggregationMode mode);

/// Value distance in [0, 1], symmetric with d(x, x) = 0.
///
/// Numbers use the relative difference min(|2(a-b)/(a+b)|, 1); dates the
/// absolute difference scaled by `date_distance_max`; string literals the
/// Levenshtein distance divided by the longer length; anything else is 0 for
/// equal terms and 1 otherwise.
double distance(const Node& a, const Node& b, const QualityParams& params);

/// F-quality of value `v` stated by (or derived from) `sources` within
/// `cluster`.
///
/// Starts from the aggregated source score, scales it by the score-weighted
/// agreement with every statement of the cluster (when conflicts are
/// considered), then raises it towards 1 according to how many sources assert
/// exactly `v` (when support is considered). Throws EmptySources.
double assess_quality(const Node& v, std::span<const Node> sources,
                      const ConflictCluster& cluster, const ScoreLookup& lookup,
                      const QualityParams& params, AggregationMode mode);

/// Per-thread count of distance() evaluations, for complexity checks.
std::uint64_t distance_evaluations() noexcept;
void reset_distance_evaluations() noexcept;

}  // namespace quadfuse
