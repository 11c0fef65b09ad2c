// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadfuse/fquality.hpp"
#include "quadfuse/model.hpp"
#include "quadfuse/strategy.hpp"

namespace quadfuse {

/// Deciding functions only select objects present in the cluster; mediating
/// functions may synthesize new ones.
enum class FunctionKind { Deciding, Mediating };

/// Read-only inputs shared by every cluster of one fusion run.
struct ResolutionContext {
  const ScoreLookup& scores;
  const MetadataIndex& metadata;
  double date_distance_max = QualityParams{}.date_distance_max;
  std::string timestamp_predicate{vocab::kInsertedAt};
};

struct ClusterResolution {
  std::vector<ResolvedQuad> quads;
  std::vector<std::string> warnings;
};

using ResolverFn = ClusterResolution (*)(const ConflictCluster&,
                                         const ResolutionContext&,
                                         const ResolutionStrategy&);

struct FunctionDescriptor {
  std::string_view name;
  FunctionKind kind;
  bool consider_conflicts;
  bool consider_support;
  std::vector<std::string_view> required_params;
  ResolverFn resolve;
};

/// Case-insensitive lookup. Throws UnknownFunction.
const FunctionDescriptor& lookup_function(std::string_view name);

std::span<const FunctionDescriptor> registered_functions();

/// Checks that the function exists and its parameters are present and
/// well-formed. Throws UnknownFunction or MissingParam.
void validate_strategy(const ResolutionStrategy& strategy);

/// Quality settings for a function under a strategy: the function's flags,
/// with conflicts disabled for many-valued properties.
QualityParams quality_params_for(const FunctionDescriptor& function,
                                 const ResolutionStrategy& strategy,
                                 const ResolutionContext& context);

/// Dispatches to the strategy's function.
ClusterResolution resolve_cluster(const ConflictCluster& cluster,
                                  const ResolutionContext& context,
                                  const ResolutionStrategy& strategy);

enum class BestVariant { Best, TopN, Threshold };
enum class Selector {
  Any,
  Longest,
  Shortest,
  Max,
  Min,
  Filter,
  BestSource,
  None,
  Certain,
  ChooseSource
};
enum class SourceMetadataMode { Max, Min, Latest };
enum class Aggregate { Avg, Median, Sum, Concat, Count, Constant };

/// Every distinct object with the graphs stating it.
ClusterResolution resolve_all(const ConflictCluster& cluster,
                              const ResolutionContext& context,
                              const ResolutionStrategy& strategy);

/// Highest-quality objects: the single best, the best n, or all above a
/// threshold. Ties go to the smaller object.
ClusterResolution resolve_best(const ConflictCluster& cluster,
                               const ResolutionContext& context,
                               const ResolutionStrategy& strategy,
                               BestVariant variant);

ClusterResolution resolve_selector(const ConflictCluster& cluster,
                                   const ResolutionContext& context,
                                   const ResolutionStrategy& strategy,
                                   Selector selector);

/// Most frequent object, optionally weighted by source score. Ties go to the
/// higher F-quality, then the smaller object.
ClusterResolution resolve_vote(const ConflictCluster& cluster,
                               const ResolutionContext& context,
                               const ResolutionStrategy& strategy, bool weighted);

ClusterResolution resolve_source_metadata(const ConflictCluster& cluster,
                                          const ResolutionContext& context,
                                          const ResolutionStrategy& strategy,
                                          SourceMetadataMode mode);

ClusterResolution resolve_mediating(const ConflictCluster& cluster,
                                    const ResolutionContext& context,
                                    const ResolutionStrategy& strategy,
                                    Aggregate aggregate);

}  // namespace quadfuse
