// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/fquality.hpp"

#include <algorithm>
#include <cmath>

#include "quadfuse/errors.hpp"
#include "quadfuse/values.hpp"

namespace quadfuse {

namespace {

thread_local std::uint64_t g_distance_evaluations = 0;

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

MetadataIndex::MetadataIndex(std::vector<Quad> metadata)
    : quads_(std::move(metadata)) {
  std::sort(quads_.begin(), quads_.end(),
            [](const Quad& a, const Quad& b) { return quad_compare(a, b) < 0; });
}

std::vector<Node> MetadataIndex::objects(std::string_view subject,
                                         std::string_view predicate) const {
  // Subjects may be IRIs or blank nodes; metadata about graphs uses IRIs.
  auto key_less = [&](const Quad& q) {
    if (q.subject.kind() != NodeKind::Uri) {
      return q.subject.kind() < NodeKind::Uri;
    }
    if (auto c = std::string_view(q.subject.value()).compare(subject); c != 0) {
      return c < 0;
    }
    return q.predicate.value() < predicate;
  };
  auto first = std::partition_point(quads_.begin(), quads_.end(), key_less);
  std::vector<Node> out;
  for (auto it = first; it != quads_.end(); ++it) {
    if (!it->subject.is_uri() || it->subject.value() != subject ||
        it->predicate.value() != predicate) {
      break;
    }
    if (out.empty() || !term_equals(out.back(), it->object)) {
      out.push_back(it->object);
    }
  }
  return out;
}

ScoreLookup::ScoreLookup(double default_score)
    : default_score_(clamp_unit(default_score)) {}

ScoreLookup ScoreLookup::from_metadata(std::span<const Quad> metadata,
                                       std::string_view score_predicate,
                                       double default_score,
                                       std::vector<std::string>* warnings) {
  ScoreLookup lookup(default_score);
  auto warn = [&](std::string message) {
    if (warnings) warnings->push_back(std::move(message));
  };
  for (const Quad& q : metadata) {
    if (!q.subject.is_uri() || q.predicate.value() != score_predicate) {
      continue;
    }
    std::optional<double> value;
    if (q.object.is_literal()) {
      value = parse_number(q.object.value());
    }
    if (!value) {
      warn("ignoring non-numeric score " + to_string(q.object) + " for <" +
           q.subject.value() + ">");
      continue;
    }
    auto existing = lookup.scores_.find(q.subject.value());
    if (existing != lookup.scores_.end()) {
      const double clamped = clamp_unit(*value);
      if (clamped != existing->second) {
        warn("conflicting scores for <" + q.subject.value() +
             ">; keeping the smallest");
        existing->second = std::min(existing->second, clamped);
      }
      continue;
    }
    if (!lookup.set(q.subject.value(), *value)) {
      warn("score " + q.object.value() + " for <" + q.subject.value() +
           "> clamped to [0, 1]");
    }
  }
  return lookup;
}

bool ScoreLookup::set(std::string graph, double score) {
  const double clamped = clamp_unit(score);
  scores_.insert_or_assign(std::move(graph), clamped);
  return clamped == score;
}

double ScoreLookup::score(std::string_view graph) const {
  auto it = scores_.find(graph);
  return it == scores_.end() ? default_score_ : it->second;
}

double source_score(const Node& graph, const ScoreLookup& lookup) {
  return lookup.score(graph);
}

double aggregate_score(std::span<const Node> graphs, const ScoreLookup& lookup,
                       AggregationMode mode) {
  if (graphs.empty()) {
    throw EmptySources();
  }
  if (mode == AggregationMode::Deciding) {
    double best = 0.0;
    for (const Node& g : graphs) {
      best = std::max(best, lookup.score(g));
    }
    return best;
  }
  double sum = 0.0;
  for (const Node& g : graphs) {
    sum += lookup.score(g);
  }
  return sum / static_cast<double>(graphs.size());
}

double distance(const Node& a, const Node& b, const QualityParams& params) {
  ++g_distance_evaluations;
  if (a.is_literal() && b.is_literal()) {
    const auto na = parse_number(a.value());
    const auto nb = parse_number(b.value());
    if (na && nb) {
      if (*na == *nb) return 0.0;
      const double sum = *na + *nb;
      if (sum == 0.0) return 1.0;
      return std::min(std::abs(2.0 * (*na - *nb) / sum), 1.0);
    }
    const auto da = parse_datetime(a.value());
    const auto db = parse_datetime(b.value());
    if (da && db) {
      return std::min(std::abs(*da - *db) / params.date_distance_max, 1.0);
    }
    if (a.is_string_literal() && b.is_string_literal()) {
      const std::u32string ua = decode_utf8(a.value());
      const std::u32string ub = decode_utf8(b.value());
      const std::size_t longest = std::max(ua.size(), ub.size());
      if (longest == 0) return 0.0;
      return static_cast<double>(levenshtein(ua, ub)) /
             static_cast<double>(longest);
    }
  }
  return term_equals(a, b) ? 0.0 : 1.0;
}

double assess_quality(const Node& v, std::span<const Node> sources,
                      const ConflictCluster& cluster, const ScoreLookup& lookup,
                      const QualityParams& params, AggregationMode mode) {
  double q = aggregate_score(sources, lookup, mode);

  if (params.consider_conflicts) {
    double weighted_distance = 0.0;
    double total_score = 0.0;
    for (const Quad& quad : cluster.quads()) {
      const double s = lookup.score(quad.graph);
      weighted_distance += s * distance(v, quad.object, params);
      total_score += s;
    }
    const double conflict_factor =
        total_score > 0.0 ? 1.0 - weighted_distance / total_score : 1.0;
    q *= conflict_factor;
  }

  if (params.consider_support) {
    double support_sum = 0.0;
    double support_max = 0.0;
    bool any = false;
    for (const Quad& quad : cluster.quads()) {
      if (term_equals(quad.object, v)) {
        const double s = lookup.score(quad.graph);
        support_sum += s;
        support_max = std::max(support_max, s);
        any = true;
      }
    }
    if (any) {
      const double support_factor =
          std::min((support_sum - support_max) / params.agree_coefficient, 1.0);
      q += (1.0 - q) * support_factor;
    }
  }
  return std::clamp(q, 0.0, 1.0);
}

std::uint64_t distance_evaluations() noexcept { return g_distance_evaluations; }

void reset_distance_evaluations() noexcept { g_distance_evaluations = 0; }

}  // namespace quadfuse
