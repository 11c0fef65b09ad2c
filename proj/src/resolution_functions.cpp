// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/resolution_functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "quadfuse/errors.hpp"
#include "quadfuse/values.hpp"

namespace quadfuse {

std::string_view to_string(Cardinality c) {
  return c == Cardinality::ManyValued ? "MANYVALUED" : "SINGLEVALUED";
}

std::string_view to_string(ErrorStrategy e) {
  return e == ErrorStrategy::Ignore ? "IGNORE" : "RETURN_ALL";
}

namespace {

/// One distinct object of a cluster and the graphs asserting it.
struct ValueGroup {
  const Node* object;
  std::vector<Node> graphs;  // sorted, unique
};

std::vector<ValueGroup> group_values(std::span<const Quad> quads) {
  std::vector<const Quad*> order;
  order.reserve(quads.size());
  for (const Quad& q : quads) order.push_back(&q);
  const bool sorted = std::is_sorted(
      order.begin(), order.end(), [](const Quad* a, const Quad* b) {
        if (auto c = node_compare(a->object, b->object); c != 0) return c < 0;
        return node_compare(a->graph, b->graph) < 0;
      });
  if (!sorted) {
    std::sort(order.begin(), order.end(), [](const Quad* a, const Quad* b) {
      if (auto c = node_compare(a->object, b->object); c != 0) return c < 0;
      return node_compare(a->graph, b->graph) < 0;
    });
  }
  std::vector<ValueGroup> groups;
  for (const Quad* q : order) {
    if (groups.empty() || !term_equals(*groups.back().object, q->object)) {
      groups.push_back({&q->object, {}});
    }
    auto& graphs = groups.back().graphs;
    if (graphs.empty() || !term_equals(graphs.back(), q->graph)) {
      graphs.push_back(q->graph);
    }
  }
  return groups;
}

std::vector<Node> all_graphs(std::span<const Quad> quads) {
  std::vector<Node> graphs;
  graphs.reserve(quads.size());
  for (const Quad& q : quads) graphs.push_back(q.graph);
  std::sort(graphs.begin(), graphs.end());
  graphs.erase(std::unique(graphs.begin(), graphs.end()), graphs.end());
  return graphs;
}

ResolvedQuad make_resolved(const ConflictCluster& cluster, Node object,
                           std::vector<Node> sources, double quality) {
  Quad quad{cluster.subject(), cluster.predicate(), std::move(object),
            sources.front()};
  return ResolvedQuad{std::move(quad), std::move(sources), quality};
}

/// Scores a deciding selection the way ALL does.
ResolvedQuad score_group(const ValueGroup& group, const ConflictCluster& cluster,
                         const ResolutionContext& context,
                         const QualityParams& params) {
  const double q = assess_quality(*group.object, group.graphs, cluster,
                                  context.scores, params, AggregationMode::Deciding);
  return make_resolved(cluster, *group.object, group.graphs, q);
}

QualityParams params_for(std::string_view name, const ResolutionStrategy& strategy,
                         const ResolutionContext& context) {
  return quality_params_for(lookup_function(name), strategy, context);
}

std::optional<long long> parse_integer(std::string_view s) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string_view require(const ResolutionStrategy& strategy, std::string_view key,
                         std::string_view function) {
  auto value = strategy.param(key);
  if (!value) {
    throw MissingParam(std::string(function), std::string(key));
  }
  return *value;
}

long long top_n(const ResolutionStrategy& strategy) {
  auto n = parse_integer(require(strategy, "n", "TOPN"));
  if (!n || *n < 1) throw MissingParam("TOPN", "n");
  return *n;
}

double threshold(const ResolutionStrategy& strategy) {
  auto t = parse_number(require(strategy, "threshold", "THRESHOLD"));
  if (!t || *t < 0.0 || *t > 1.0) throw MissingParam("THRESHOLD", "threshold");
  return *t;
}

bool all_numeric(const std::vector<ValueGroup>& groups) {
  return std::all_of(groups.begin(), groups.end(), [](const ValueGroup& g) {
    return g.object->is_literal() && parse_number(g.object->value()).has_value();
  });
}

bool is_numeric_literal(const Node& n) {
  return n.is_literal() && parse_number(n.value()).has_value();
}

// Ordering of source-metadata values: numeric, else dateTime, else lexical.
enum class ValueOrder { Numeric, DateTime, Lexical };

ValueOrder metadata_order(const std::vector<Node>& values) {
  const bool numeric = std::all_of(values.begin(), values.end(), [](const Node& n) {
    return parse_number(n.value()).has_value();
  });
  if (numeric) return ValueOrder::Numeric;
  const bool dates = std::all_of(values.begin(), values.end(), [](const Node& n) {
    return parse_datetime(n.value()).has_value();
  });
  return dates ? ValueOrder::DateTime : ValueOrder::Lexical;
}

int compare_metadata(const Node& a, const Node& b, ValueOrder order) {
  auto sign = [](double x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); };
  switch (order) {
    case ValueOrder::Numeric:
      return sign(*parse_number(a.value()) - *parse_number(b.value()));
    case ValueOrder::DateTime:
      return sign(*parse_datetime(a.value()) - *parse_datetime(b.value()));
    case ValueOrder::Lexical:
      return a.value().compare(b.value()) < 0 ? -1
                                              : (a.value() == b.value() ? 0 : 1);
  }
  return 0;
}

ClusterResolution resolve_any_fallback(const ConflictCluster& cluster,
                                       const ResolutionContext& context,
                                       const ResolutionStrategy& strategy,
                                       std::string_view function) {
  ClusterResolution out;
  auto groups = group_values(cluster.quads());
  out.quads.push_back(score_group(groups.front(), cluster, context,
                                  params_for(function, strategy, context)));
  return out;
}

Node constant_node(std::string_view value) {
  if (value.size() >= 2 && value.front() == '<' && value.back() == '>') {
    return Node::uri(std::string(value.substr(1, value.size() - 2)));
  }
  return Node::literal(std::string(value));
}

std::string_view function_name(Aggregate a) {
  switch (a) {
    case Aggregate::Avg: return "AVG";
    case Aggregate::Median: return "MEDIAN";
    case Aggregate::Sum: return "SUM";
    case Aggregate::Concat: return "CONCAT";
    case Aggregate::Count: return "COUNT";
    case Aggregate::Constant: return "CONSTANT";
  }
  return "AVG";
}

std::string_view function_name(Selector s) {
  switch (s) {
    case Selector::Any: return "ANY";
    case Selector::Longest: return "LONGEST";
    case Selector::Shortest: return "SHORTEST";
    case Selector::Max: return "MAX";
    case Selector::Min: return "MIN";
    case Selector::Filter: return "FILTER";
    case Selector::BestSource: return "BESTSOURCE";
    case Selector::None: return "NONE";
    case Selector::Certain: return "CERTAIN";
    case Selector::ChooseSource: return "CHOOSESOURCE";
  }
  return "ANY";
}

std::string_view function_name(BestVariant v) {
  switch (v) {
    case BestVariant::Best: return "BEST";
    case BestVariant::TopN: return "TOPN";
    case BestVariant::Threshold: return "THRESHOLD";
  }
  return "BEST";
}

std::string_view function_name(SourceMetadataMode m) {
  switch (m) {
    case SourceMetadataMode::Max: return "MAXSOURCEMETADATA";
    case SourceMetadataMode::Min: return "MINSOURCEMETADATA";
    case SourceMetadataMode::Latest: return "LATEST";
  }
  return "LATEST";
}

template <auto Variant>
ClusterResolution best_adapter(const ConflictCluster& c, const ResolutionContext& x,
                               const ResolutionStrategy& s) {
  return resolve_best(c, x, s, Variant);
}
template <auto Which>
ClusterResolution selector_adapter(const ConflictCluster& c,
                                   const ResolutionContext& x,
                                   const ResolutionStrategy& s) {
  return resolve_selector(c, x, s, Which);
}
template <bool Weighted>
ClusterResolution vote_adapter(const ConflictCluster& c, const ResolutionContext& x,
                               const ResolutionStrategy& s) {
  return resolve_vote(c, x, s, Weighted);
}
template <auto Mode>
ClusterResolution metadata_adapter(const ConflictCluster& c,
                                   const ResolutionContext& x,
                                   const ResolutionStrategy& s) {
  return resolve_source_metadata(c, x, s, Mode);
}
template <auto Which>
ClusterResolution mediating_adapter(const ConflictCluster& c,
                                    const ResolutionContext& x,
                                    const ResolutionStrategy& s) {
  return resolve_mediating(c, x, s, Which);
}

const std::vector<FunctionDescriptor>& registry() {
  using K = FunctionKind;
  static const std::vector<FunctionDescriptor> functions{
      {"ALL", K::Deciding, true, true, {}, &resolve_all},
      {"ANY", K::Deciding, true, true, {}, &selector_adapter<Selector::Any>},
      {"BEST", K::Deciding, true, true, {}, &best_adapter<BestVariant::Best>},
      {"TOPN", K::Deciding, true, true, {"n"}, &best_adapter<BestVariant::TopN>},
      {"THRESHOLD", K::Deciding, true, true, {"threshold"},
       &best_adapter<BestVariant::Threshold>},
      {"BESTSOURCE", K::Deciding, true, true, {},
       &selector_adapter<Selector::BestSource>},
      {"FILTER", K::Deciding, true, true, {}, &selector_adapter<Selector::Filter>},
      {"LONGEST", K::Deciding, true, true, {},
       &selector_adapter<Selector::Longest>},
      {"SHORTEST", K::Deciding, true, true, {},
       &selector_adapter<Selector::Shortest>},
      {"MAX", K::Deciding, true, true, {}, &selector_adapter<Selector::Max>},
      {"MIN", K::Deciding, true, true, {}, &selector_adapter<Selector::Min>},
      {"NONE", K::Deciding, true, true, {}, &selector_adapter<Selector::None>},
      {"VOTE", K::Deciding, true, true, {}, &vote_adapter<false>},
      {"WEIGHTEDVOTE", K::Deciding, true, true, {}, &vote_adapter<true>},
      {"MAXSOURCEMETADATA", K::Deciding, true, true, {"metadataProperty"},
       &metadata_adapter<SourceMetadataMode::Max>},
      {"MINSOURCEMETADATA", K::Deciding, true, true, {"metadataProperty"},
       &metadata_adapter<SourceMetadataMode::Min>},
      {"LATEST", K::Deciding, true, true, {},
       &metadata_adapter<SourceMetadataMode::Latest>},
      {"CHOOSESOURCE", K::Deciding, true, true, {"source"},
       &selector_adapter<Selector::ChooseSource>},
      {"CERTAIN", K::Deciding, true, true, {}, &selector_adapter<Selector::Certain>},
      {"CONSTANT", K::Mediating, false, false, {"value"},
       &mediating_adapter<Aggregate::Constant>},
      {"COUNT", K::Mediating, false, false, {}, &mediating_adapter<Aggregate::Count>},
      {"AVG", K::Mediating, true, false, {}, &mediating_adapter<Aggregate::Avg>},
      {"MEDIAN", K::Mediating, true, false, {}, &mediating_adapter<Aggregate::Median>},
      {"SUM", K::Mediating, false, false, {}, &mediating_adapter<Aggregate::Sum>},
      {"CONCAT", K::Mediating, false, false, {}, &mediating_adapter<Aggregate::Concat>},
  };
  return functions;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           auto up = [](char c) {
             return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
           };
           return up(x) == up(y);
         });
}

}  // namespace

const FunctionDescriptor& lookup_function(std::string_view name) {
  for (const FunctionDescriptor& f : registry()) {
    if (iequals(f.name, name)) {
      return f;
    }
  }
  throw UnknownFunction(std::string(name));
}

std::span<const FunctionDescriptor> registered_functions() { return registry(); }

void validate_strategy(const ResolutionStrategy& strategy) {
  const FunctionDescriptor& f = lookup_function(strategy.function_name);
  for (std::string_view key : f.required_params) {
    require(strategy, key, f.name);
  }
  if (f.name == "TOPN") {
    top_n(strategy);
  } else if (f.name == "THRESHOLD") {
    threshold(strategy);
  } else if (f.name == "FILTER") {
    if (!strategy.param("min") && !strategy.param("max")) {
      throw MissingParam("FILTER", "min/max");
    }
  }
  if (!(strategy.agree_coefficient > 0.0) || !std::isfinite(strategy.agree_coefficient)) {
    throw MissingParam(std::string(f.name), "agree-coefficient");
  }
}

QualityParams quality_params_for(const FunctionDescriptor& function,
                                 const ResolutionStrategy& strategy,
                                 const ResolutionContext& context) {
  QualityParams params;
  params.consider_conflicts = function.consider_conflicts &&
                              strategy.cardinality != Cardinality::ManyValued;
  params.consider_support = function.consider_support;
  params.agree_coefficient = strategy.agree_coefficient;
  params.date_distance_max = context.date_distance_max;
  return params;
}

ClusterResolution resolve_cluster(const ConflictCluster& cluster,
                                  const ResolutionContext& context,
                                  const ResolutionStrategy& strategy) {
  return lookup_function(strategy.function_name).resolve(cluster, context, strategy);
}

ClusterResolution resolve_all(const ConflictCluster& cluster,
                              const ResolutionContext& context,
                              const ResolutionStrategy& strategy) {
  const QualityParams params = params_for("ALL", strategy, context);
  ClusterResolution out;
  for (const ValueGroup& group : group_values(cluster.quads())) {
    out.quads.push_back(score_group(group, cluster, context, params));
  }
  return out;
}

ClusterResolution resolve_best(const ConflictCluster& cluster,
                               const ResolutionContext& context,
                               const ResolutionStrategy& strategy,
                               BestVariant variant) {
  const QualityParams params = params_for(function_name(variant), strategy, context);
  std::vector<ResolvedQuad> scored;
  for (const ValueGroup& group : group_values(cluster.quads())) {
    scored.push_back(score_group(group, cluster, context, params));
  }
  // Groups arrive in object order, so a stable sort keeps the smaller object
  // first among equal qualities.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ResolvedQuad& a, const ResolvedQuad& b) {
                     return a.quality > b.quality;
                   });
  ClusterResolution out;
  switch (variant) {
    case BestVariant::Best:
      scored.resize(1);
      break;
    case BestVariant::TopN: {
      const auto n = static_cast<std::size_t>(top_n(strategy));
      if (scored.size() > n) scored.resize(n);
      break;
    }
    case BestVariant::Threshold: {
      const double t = threshold(strategy);
      std::erase_if(scored, [t](const ResolvedQuad& r) { return !(r.quality > t); });
      break;
    }
  }
  out.quads = std::move(scored);
  return out;
}

ClusterResolution resolve_selector(const ConflictCluster& cluster,
                                   const ResolutionContext& context,
                                   const ResolutionStrategy& strategy,
                                   Selector selector) {
  const std::string_view name = function_name(selector);
  const QualityParams params = params_for(name, strategy, context);
  ClusterResolution out;
  if (selector == Selector::None) {
    return out;
  }
  const std::vector<ValueGroup> groups = group_values(cluster.quads());
  auto emit = [&](const ValueGroup& group) {
    out.quads.push_back(score_group(group, cluster, context, params));
  };

  switch (selector) {
    case Selector::Any:
      emit(groups.front());
      break;
    case Selector::Longest:
    case Selector::Shortest: {
      const ValueGroup* chosen = &groups.front();
      for (const ValueGroup& g : groups) {
        const std::size_t len = g.object->value().size();
        const std::size_t best = chosen->object->value().size();
        if (selector == Selector::Longest ? len > best : len < best) {
          chosen = &g;
        }
      }
      emit(*chosen);
      break;
    }
    case Selector::Max:
    case Selector::Min: {
      const bool numeric = all_numeric(groups);
      const ValueGroup* chosen = &groups.front();
      for (const ValueGroup& g : groups) {
        bool better;
        if (numeric) {
          const double a = *parse_number(g.object->value());
          const double b = *parse_number(chosen->object->value());
          better = selector == Selector::Max ? a > b : a < b;
        } else {
          const auto c = node_compare(*g.object, *chosen->object);
          better = selector == Selector::Max ? c > 0 : c < 0;
        }
        if (better) chosen = &g;
      }
      emit(*chosen);
      break;
    }
    case Selector::Filter: {
      const auto min = strategy.param("min");
      const auto max = strategy.param("max");
      if (!min && !max) throw MissingParam("FILTER", "min/max");
      const bool bounds_numeric = (!min || parse_number(*min)) && (!max || parse_number(*max));
      const bool numeric = bounds_numeric && all_numeric(groups);
      for (const ValueGroup& g : groups) {
        bool keep = true;
        if (numeric) {
          const double v = *parse_number(g.object->value());
          if (min && v < *parse_number(*min)) keep = false;
          if (max && v > *parse_number(*max)) keep = false;
        } else {
          const std::string_view v = g.object->value();
          if (min && v < *min) keep = false;
          if (max && v > *max) keep = false;
        }
        if (keep) emit(g);
      }
      break;
    }
    case Selector::BestSource: {
      double best_score = -1.0;
      for (const Quad& q : cluster.quads()) {
        best_score = std::max(best_score, context.scores.score(q.graph));
      }
      for (const ValueGroup& g : groups) {
        const bool from_best = std::any_of(g.graphs.begin(), g.graphs.end(), [&](const Node& graph) {
          return context.scores.score(graph) == best_score;
        });
        if (from_best) {
          emit(g);
          break;
        }
      }
      break;
    }
    case Selector::Certain:
      if (groups.size() == 1) emit(groups.front());
      break;
    case Selector::ChooseSource: {
      const std::string_view source = require(strategy, "source", name);
      for (const ValueGroup& g : groups) {
        const bool has = std::any_of(g.graphs.begin(), g.graphs.end(),
                                     [&](const Node& graph) { return graph.value() == source; });
        if (has) emit(g);
      }
      break;
    }
    case Selector::None:
      break;
  }
  return out;
}

ClusterResolution resolve_vote(const ConflictCluster& cluster,
                               const ResolutionContext& context,
                               const ResolutionStrategy& strategy, bool weighted) {
  const QualityParams params =
      params_for(weighted ? "WEIGHTEDVOTE" : "VOTE", strategy, context);
  const std::vector<ValueGroup> groups = group_values(cluster.quads());
  std::vector<double> votes;
  votes.reserve(groups.size());
  for (const ValueGroup& g : groups) {
    double v = 0.0;
    for (const Node& graph : g.graphs) {
      v += weighted ? context.scores.score(graph) : 1.0;
    }
    votes.push_back(v);
  }
  const double top = *std::max_element(votes.begin(), votes.end());
  // Weighted sums tie within a relative tolerance.
  const double tolerance = weighted ? 1e-12 * std::max(1.0, std::abs(top)) : 0.0;

  ClusterResolution out;
  std::optional<ResolvedQuad> winner;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (votes[i] < top - tolerance) continue;
    ResolvedQuad candidate = score_group(groups[i], cluster, context, params);
    if (!winner || candidate.quality > winner->quality) {
      winner = std::move(candidate);
    }
  }
  out.quads.push_back(std::move(*winner));
  return out;
}

ClusterResolution resolve_source_metadata(const ConflictCluster& cluster,
                                          const ResolutionContext& context,
                                          const ResolutionStrategy& strategy,
                                          SourceMetadataMode mode) {
  const std::string_view name = function_name(mode);
  const std::string property =
      mode == SourceMetadataMode::Latest
          ? context.timestamp_predicate
          : std::string(require(strategy, "metadataProperty", name));
  const bool want_max = mode != SourceMetadataMode::Min;

  const std::vector<Node> graphs = all_graphs(cluster.quads());
  std::vector<std::pair<const Node*, Node>> candidates;  // graph, metadata value
  for (const Node& g : graphs) {
    std::vector<Node> values = context.metadata.objects(g.value(), property);
    for (Node& v : values) candidates.emplace_back(&g, std::move(v));
  }
  if (candidates.empty()) {
    ClusterResolution out = resolve_any_fallback(cluster, context, strategy, name);
    out.warnings.push_back(std::string(name) + ": no graph of cluster " +
                           to_string(cluster.subject()) + " " +
                           to_string(cluster.predicate()) + " has <" + property +
                           ">; falling back to ANY");
    return out;
  }
  std::vector<Node> values;
  values.reserve(candidates.size());
  for (const auto& c : candidates) values.push_back(c.second);
  const ValueOrder order = metadata_order(values);

  // Graphs are visited in IRI order; strict comparison keeps the smallest
  // graph among equal metadata values.
  const std::pair<const Node*, Node>* best = &candidates.front();
  for (const auto& c : candidates) {
    const int cmp = compare_metadata(c.second, best->second, order);
    if (want_max ? cmp > 0 : cmp < 0) best = &c;
  }
  const Node& winning_graph = *best->first;

  const QualityParams params = params_for(name, strategy, context);
  ClusterResolution out;
  for (const ValueGroup& g : group_values(cluster.quads())) {
    if (std::binary_search(g.graphs.begin(), g.graphs.end(), winning_graph)) {
      out.quads.push_back(score_group(g, cluster, context, params));
    }
  }
  return out;
}

ClusterResolution resolve_mediating(const ConflictCluster& cluster,
                                    const ResolutionContext& context,
                                    const ResolutionStrategy& strategy,
                                    Aggregate aggregate) {
  const std::string_view name = function_name(aggregate);
  const QualityParams params = params_for(name, strategy, context);
  ClusterResolution out;
  auto emit_aggregate = [&](Node object, std::vector<Node> sources) {
    const double q = assess_quality(object, sources, cluster, context.scores,
                                    params, AggregationMode::Mediating);
    out.quads.push_back(make_resolved(cluster, std::move(object), std::move(sources), q));
  };

  switch (aggregate) {
    case Aggregate::Concat: {
      const std::string separator(strategy.param("separator").value_or("; "));
      std::string joined;
      bool first = true;
      for (const ValueGroup& g : group_values(cluster.quads())) {
        if (!first) joined += separator;
        joined += g.object->value();
        first = false;
      }
      emit_aggregate(Node::literal(std::move(joined)), all_graphs(cluster.quads()));
      return out;
    }
    case Aggregate::Count: {
      const auto distinct = group_values(cluster.quads()).size();
      emit_aggregate(Node::typed_literal(std::to_string(distinct),
                                         std::string(vocab::kXsdInteger)),
                     all_graphs(cluster.quads()));
      return out;
    }
    case Aggregate::Constant:
      emit_aggregate(constant_node(require(strategy, "value", name)),
                     all_graphs(cluster.quads()));
      return out;
    case Aggregate::Avg:
    case Aggregate::Median:
    case Aggregate::Sum:
      break;
  }

  std::vector<double> numbers;
  std::vector<Quad> contributing;
  std::vector<Quad> rejected;
  for (const Quad& q : cluster.quads()) {
    if (is_numeric_literal(q.object)) {
      numbers.push_back(*parse_number(q.object.value()));
      contributing.push_back(q);
    } else {
      rejected.push_back(q);
    }
  }

  if (!numbers.empty()) {
    double value = 0.0;
    if (aggregate == Aggregate::Median) {
      std::sort(numbers.begin(), numbers.end());
      const std::size_t mid = numbers.size() / 2;
      value = numbers.size() % 2 == 1 ? numbers[mid]
                                      : (numbers[mid - 1] + numbers[mid]) / 2.0;
    } else {
      value = std::accumulate(numbers.begin(), numbers.end(), 0.0);
      if (aggregate == Aggregate::Avg) value /= static_cast<double>(numbers.size());
    }
    // Drop binary summation noise such as 13.390999999999998.
    value = round_significant(value);
    emit_aggregate(Node::typed_literal(format_double(value), std::string(vocab::kXsdDouble)),
                   all_graphs(contributing));
  }

  if (!rejected.empty() && strategy.error_strategy == ErrorStrategy::ReturnAll) {
    const QualityParams pass_through = params_for("ALL", strategy, context);
    for (const ValueGroup& g : group_values(rejected)) {
      out.quads.push_back(score_group(g, cluster, context, pass_through));
    }
  }
  return out;
}

}  // namespace quadfuse
