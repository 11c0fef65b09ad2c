// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quadfuse/canonical_map.hpp"
#include "quadfuse/model.hpp"
#include "quadfuse/strategy.hpp"

namespace quadfuse {

struct FusionConfig {
  std::vector<std::string> preferred_namespaces;
  std::string score_predicate{vocab::kOdcsScore};
  std::string timestamp_predicate{vocab::kInsertedAt};
  double default_source_score = 1.0;
  double date_distance_max = 31'557'600.0;
  /// Clusters are resolved by this many threads; output order does not
  /// depend on it.
  unsigned workers = 1;
};

struct FusionResult {
  std::vector<ResolvedQuad> quads;
  std::vector<std::string> warnings;
  CanonicalMap canonical;
  std::size_t input_quads = 0;
  std::size_t unique_quads = 0;
  std::size_t clusters = 0;
};

/// Replaces IRIs in subject, predicate and object position by their
/// canonical form. Graph names are left untouched.
std::vector<Quad> resolve_uris(std::vector<Quad> quads, const CanonicalMap& map);

/// Sorts by quad order and drops exact duplicates.
std::vector<Quad> sort_and_dedupe(std::vector<Quad> quads);

/// Splits a sorted quad sequence into maximal (subject, predicate) runs.
std::vector<ConflictCluster> cluster_quads(std::span<const Quad> sorted);

/// The strategy configured for any property whose canonical form is
/// `predicate`, or the default strategy. When several configured properties
/// share the canonical form, the smallest IRI wins.
const ResolutionStrategy& select_strategy(const Node& predicate,
                                          const ResolutionPolicy& policy,
                                          const CanonicalMap& map);

/// Runs the whole conflict-resolution pipeline. Throws UnknownFunction or
/// MissingParam before any cluster is processed if the policy is invalid.
FusionResult fuse(std::vector<Quad> data, std::span<const Quad> metadata,
                  std::span<const Link> links, const ResolutionPolicy& policy,
                  const FusionConfig& config);

}  // namespace quadfuse
