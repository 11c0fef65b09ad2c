// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/fusion_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "quadfuse/fquality.hpp"
#include "quadfuse/resolution_functions.hpp"

namespace quadfuse {

namespace {

void canonicalize(Node& node, const CanonicalMap& map) {
  if (!node.is_uri()) return;
  if (const std::string* rep = map.find(node.value()); rep && *rep != node.value()) {
    node = Node::uri(*rep);
  }
}

// Canonical predicate IRI -> strategy, resolving alias collisions once.
class StrategyTable {
 public:
  StrategyTable(const ResolutionPolicy& policy, const CanonicalMap& map)
      : default_(&policy.default_strategy) {
    // per_property iterates in IRI order, so the first alias seen wins.
    for (const auto& [property, strategy] : policy.per_property) {
      by_canonical_.try_emplace(std::string(map.canonical_of(property)), &strategy);
    }
  }

  const ResolutionStrategy& lookup(const Node& predicate) const {
    auto it = by_canonical_.find(predicate.value());
    return it == by_canonical_.end() ? *default_ : *it->second;
  }

 private:
  const ResolutionStrategy* default_;
  std::map<std::string, const ResolutionStrategy*, std::less<>> by_canonical_;
};

}  // namespace

std::vector<Quad> resolve_uris(std::vector<Quad> quads, const CanonicalMap& map) {
  if (map.empty()) return quads;
  for (Quad& q : quads) {
    canonicalize(q.subject, map);
    canonicalize(q.predicate, map);
    canonicalize(q.object, map);
  }
  return quads;
}

std::vector<Quad> sort_and_dedupe(std::vector<Quad> quads) {
  std::sort(quads.begin(), quads.end(),
            [](const Quad& a, const Quad& b) { return quad_compare(a, b) < 0; });
  quads.erase(std::unique(quads.begin(), quads.end()), quads.end());
  return quads;
}

std::vector<ConflictCluster> cluster_quads(std::span<const Quad> sorted) {
  std::vector<ConflictCluster> clusters;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || !term_equals(sorted[i].subject, sorted[begin].subject) ||
        !term_equals(sorted[i].predicate, sorted[begin].predicate)) {
      if (i > begin) clusters.emplace_back(sorted.subspan(begin, i - begin));
      begin = i;
    }
  }
  return clusters;
}

const ResolutionStrategy& select_strategy(const Node& predicate,
                                          const ResolutionPolicy& policy,
                                          const CanonicalMap& map) {
  for (const auto& [property, strategy] : policy.per_property) {
    if (map.canonical_of(property) == predicate.value()) {
      return strategy;
    }
  }
  return policy.default_strategy;
}

FusionResult fuse(std::vector<Quad> data, std::span<const Quad> metadata,
                  std::span<const Link> links, const ResolutionPolicy& policy,
                  const FusionConfig& config) {
  validate_strategy(policy.default_strategy);
  for (const auto& [property, strategy] : policy.per_property) {
    validate_strategy(strategy);
  }

  FusionResult result;
  result.input_quads = data.size();
  result.canonical = build_canonical_mapping(links, config.preferred_namespaces);

  std::vector<Quad> quads =
      sort_and_dedupe(resolve_uris(std::move(data), result.canonical));
  result.unique_quads = quads.size();
  const std::vector<ConflictCluster> clusters = cluster_quads(quads);
  result.clusters = clusters.size();

  const ScoreLookup scores = ScoreLookup::from_metadata(
      metadata, config.score_predicate, config.default_source_score, &result.warnings);
  const MetadataIndex metadata_index(std::vector<Quad>(metadata.begin(), metadata.end()));
  const ResolutionContext context{scores, metadata_index, config.date_distance_max,
                                  config.timestamp_predicate};
  const StrategyTable strategies(policy, result.canonical);

  std::vector<ClusterResolution> resolved(clusters.size());
  auto work = [&](std::size_t i) {
    const ConflictCluster& cluster = clusters[i];
    resolved[i] = resolve_cluster(cluster, context, strategies.lookup(cluster.predicate()));
  };

  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1 || clusters.size() < 2) {
    for (std::size_t i = 0; i < clusters.size(); ++i) work(i);
  } else {
    constexpr std::size_t kBatch = 256;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t begin = next.fetch_add(kBatch); begin < clusters.size();
                 begin = next.fetch_add(kBatch)) {
              const std::size_t end = std::min(begin + kBatch, clusters.size());
              for (std::size_t i = begin; i < end; ++i) work(i);
            }
          } catch (...) {
            failures[w] = std::current_exception();
            next = clusters.size();
          }
        });
      }
    }
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  std::size_t total = 0;
  for (const auto& r : resolved) total += r.quads.size();
  result.quads.reserve(total);
  for (auto& r : resolved) {
    std::move(r.quads.begin(), r.quads.end(), std::back_inserter(result.quads));
    std::move(r.warnings.begin(), r.warnings.end(), std::back_inserter(result.warnings));
  }
  return result;
}

}  // namespace quadfuse
