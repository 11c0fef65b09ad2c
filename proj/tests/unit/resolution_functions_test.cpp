// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "quadfuse/errors.hpp"
#include "quadfuse/resolution_functions.hpp"
#include "unit/helpers.hpp"

using namespace quadfuse;
using namespace quadfuse::testing;

namespace {

const std::string kS = "http://dbpedia.org/resource/Berlin";
const std::string kP = "urn:p";

struct Fixture {
  ScoreLookup scores{1.0};
  MetadataIndex metadata;
  std::vector<Quad> quads;

  ResolutionContext context() const { return ResolutionContext{scores, metadata}; }
  ConflictCluster cluster() const { return ConflictCluster{std::span<const Quad>(quads)}; }

  void add(Node object, const std::string& graph, double score) {
    quads.push_back(Q(kS, kP, std::move(object), graph));
    scores.set(graph, score);
  }
  void sort() { std::sort(quads.begin(), quads.end()); }

  ClusterResolution run(const std::string& function,
                        std::map<std::string, std::string, std::less<>> params = {},
                        ErrorStrategy on_error = ErrorStrategy::ReturnAll) const {
    ResolutionStrategy s;
    s.function_name = function;
    s.params = std::move(params);
    s.error_strategy = on_error;
    return resolve_cluster(cluster(), context(), s);
  }
};

std::vector<std::string> objects(const ClusterResolution& r) {
  std::vector<std::string> out;
  for (const auto& q : r.quads) out.push_back(q.quad.object.value());
  return out;
}

Fixture latitude() {
  Fixture f;
  f.add(L("52.5006"), "http://dbpedia.org", 0.9);
  f.add(L("52.5167"), "http://data.nytimes.com", 0.8);
  f.add(L("52.5233"), "http://rdf.freebase.com", 0.8);
  f.add(L("52.52437"), "http://sws.geonames.org", 0.8);
  f.add(L("13.4126"), "http://example.com/err", 0.8);
  f.sort();
  return f;
}

}  // namespace

TEST_CASE("registry lookup and settings") {
  CHECK(registered_functions().size() == 25);
  const auto& best = lookup_function("best");
  CHECK(best.name == "BEST");
  CHECK(best.kind == FunctionKind::Deciding);
  CHECK(best.consider_conflicts);
  CHECK(best.consider_support);
  const auto& avg = lookup_function("AVG");
  CHECK(avg.kind == FunctionKind::Mediating);
  CHECK(avg.consider_conflicts);
  CHECK_FALSE(avg.consider_support);
  CHECK_FALSE(lookup_function("MEDIAN").consider_support);
  for (const char* n : {"SUM", "CONCAT"}) {
    CHECK_FALSE(lookup_function(n).consider_conflicts);
    CHECK_FALSE(lookup_function(n).consider_support);
  }
  for (const auto& d : registered_functions()) {
    if (d.kind == FunctionKind::Deciding) {
      CHECK(d.consider_conflicts);
      CHECK(d.consider_support);
    }
  }
  CHECK_THROWS_AS(lookup_function("FROBNICATE"), UnknownFunction);
}

TEST_CASE("strategy validation") {
  ResolutionStrategy s;
  s.function_name = "TOPN";
  CHECK_THROWS_AS(validate_strategy(s), MissingParam);
  s.params["n"] = "0";
  CHECK_THROWS_AS(validate_strategy(s), MissingParam);
  s.params["n"] = "2";
  CHECK_NOTHROW(validate_strategy(s));
  s.function_name = "THRESHOLD";
  s.params = {{"threshold", "1.5"}};
  CHECK_THROWS_AS(validate_strategy(s), MissingParam);
  s.function_name = "FILTER";
  s.params = {};
  CHECK_THROWS_AS(validate_strategy(s), MissingParam);
  s.params = {{"max", "3"}};
  CHECK_NOTHROW(validate_strategy(s));
  s.function_name = "NOPE";
  CHECK_THROWS_AS(validate_strategy(s), UnknownFunction);
}

TEST_CASE("many-valued cardinality disables the conflict factor") {
  ScoreLookup scores;
  MetadataIndex metadata;
  const ResolutionContext ctx{scores, metadata};
  ResolutionStrategy s;
  s.function_name = "ALL";
  s.agree_coefficient = 2.5;
  CHECK(quality_params_for(lookup_function("ALL"), s, ctx).consider_conflicts);
  s.cardinality = Cardinality::ManyValued;
  const QualityParams p = quality_params_for(lookup_function("ALL"), s, ctx);
  CHECK_FALSE(p.consider_conflicts);
  CHECK(p.consider_support);
  CHECK(p.agree_coefficient == 2.5);
}

TEST_CASE("ALL groups graphs per value") {
  Fixture f;
  f.add(L("x"), "urn:g1", 1.0);
  f.add(L("x"), "urn:g2", 1.0);
  f.add(L("y"), "urn:g3", 1.0);
  f.sort();
  const auto r = f.run("ALL");
  REQUIRE(r.quads.size() == 2);
  CHECK(r.quads[0].sources == std::vector<Node>{U("urn:g1"), U("urn:g2")});
  CHECK(r.quads[1].sources == std::vector<Node>{U("urn:g3")});

  Fixture single;
  single.add(L("v"), "urn:g", 0.6);
  const auto one = single.run("ALL");
  REQUIRE(one.quads.size() == 1);
  CHECK(one.quads[0].quality == doctest::Approx(0.6));
}

TEST_CASE("BEST, TOPN and THRESHOLD rank by quality") {
  const Fixture f = latitude();
  CHECK(objects(f.run("BEST")) == std::vector<std::string>{"52.5006"});
  CHECK(objects(f.run("TOPN", {{"n", "2"}})) == std::vector<std::string>{"52.5006", "52.5167"});
  CHECK(f.run("TOPN", {{"n", "10"}}).quads.size() == 5);
  CHECK(f.run("THRESHOLD", {{"threshold", "1"}}).quads.empty());
  CHECK(objects(f.run("THRESHOLD", {{"threshold", "0.7"}})) == std::vector<std::string>{"52.5006"});
  CHECK_THROWS_AS(f.run("TOPN"), MissingParam);
}

TEST_CASE("selectors") {
  const Fixture f = latitude();
  CHECK(objects(f.run("ANY")) == std::vector<std::string>{"13.4126"});
  CHECK(objects(f.run("MAX")) == std::vector<std::string>{"52.52437"});
  CHECK(objects(f.run("MIN")) == std::vector<std::string>{"13.4126"});
  CHECK(objects(f.run("LONGEST")) == std::vector<std::string>{"52.52437"});
  CHECK(objects(f.run("SHORTEST")) == std::vector<std::string>{"13.4126"});
  CHECK(objects(f.run("FILTER", {{"min", "50"}, {"max", "52.52"}})) ==
        std::vector<std::string>{"52.5006", "52.5167"});
  CHECK(objects(f.run("BESTSOURCE")) == std::vector<std::string>{"52.5006"});
  CHECK(f.run("NONE").quads.empty());
  CHECK(f.run("CERTAIN").quads.empty());
  CHECK(objects(f.run("CHOOSESOURCE", {{"source", "http://rdf.freebase.com"}})) ==
        std::vector<std::string>{"52.5233"});

  Fixture same;
  same.add(L("x"), "urn:g1", 1.0);
  same.add(L("x"), "urn:g2", 1.0);
  CHECK(objects(same.run("CERTAIN")) == std::vector<std::string>{"x"});

  Fixture mixed;
  mixed.add(L("10"), "urn:g1", 1.0);
  mixed.add(L("9"), "urn:g2", 1.0);
  mixed.add(L("abc"), "urn:g3", 1.0);
  mixed.sort();
  CHECK(objects(mixed.run("MAX")) == std::vector<std::string>{"abc"});
  CHECK(objects(mixed.run("MIN")) == std::vector<std::string>{"10"});
}

TEST_CASE("selection is scored like ALL") {
  const Fixture f = latitude();
  const auto all = f.run("ALL");
  const auto best = f.run("BEST");
  REQUIRE(best.quads.size() == 1);
  const auto it = std::find_if(all.quads.begin(), all.quads.end(), [&](const ResolvedQuad& r) {
    return r.quad.object == best.quads[0].quad.object;
  });
  REQUIRE(it != all.quads.end());
  CHECK(it->quality == best.quads[0].quality);
}

TEST_CASE("VOTE and WEIGHTEDVOTE") {
  Fixture f;
  f.add(L("a"), "urn:g1", 0.1);
  f.add(L("a"), "urn:g2", 0.1);
  f.add(L("b"), "urn:g3", 0.9);
  f.sort();
  CHECK(objects(f.run("VOTE")) == std::vector<std::string>{"a"});
  CHECK(objects(f.run("WEIGHTEDVOTE")) == std::vector<std::string>{"b"});
}

TEST_CASE("VOTE ties go to the value with higher quality") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    Fixture f;
    f.add(L("v" + std::to_string(rng() % 50)), "urn:g1", 0.5);
    f.add(L("w" + std::to_string(rng() % 50)), "urn:g2", 0.5);
    f.add(L("long value " + std::to_string(rng() % 50)), "urn:g3", 0.2 + 0.1 * (rng() % 3));
    f.add(L("long value " + std::to_string(rng() % 50)), "urn:g4", 0.2);
    f.sort();
    const auto all = f.run("ALL");
    // Exhaustive oracle: highest vote count, then quality, then smallest object.
    std::vector<std::pair<std::size_t, const ResolvedQuad*>> cand;
    for (const auto& r : all.quads) cand.push_back({r.sources.size(), &r});
    const auto best = *std::min_element(cand.begin(), cand.end(), [](auto& a, auto& b) {
      if (a.first != b.first) return a.first > b.first;
      if (a.second->quality != b.second->quality) return a.second->quality > b.second->quality;
      return a.second->quad.object < b.second->quad.object;
    });
    const auto vote = f.run("VOTE");
    REQUIRE(vote.quads.size() == 1);
    REQUIRE(vote.quads[0].quad.object == best.second->quad.object);
  }
}

TEST_CASE("source metadata functions") {
  Fixture f;
  f.add(L("from-db"), "http://dbpedia.org", 0.9);
  f.add(L("from-fb"), "http://rdf.freebase.com", 0.8);
  f.sort();
  const std::string score(vocab::kOdcsScore);
  f.metadata = MetadataIndex({Q("http://dbpedia.org", score, L("0.9"), "urn:m"),
                              Q("http://rdf.freebase.com", score, L("0.8"), "urn:m"),
                              Q("http://dbpedia.org", "urn:quadfuse:insertedAt", L("2013-01-01"), "urn:m"),
                              Q("http://rdf.freebase.com", "urn:quadfuse:insertedAt", L("2014-01-01T00:00:00Z"), "urn:m")});
  CHECK(objects(f.run("MAXSOURCEMETADATA", {{"metadataProperty", score}})) ==
        std::vector<std::string>{"from-db"});
  CHECK(objects(f.run("MINSOURCEMETADATA", {{"metadataProperty", score}})) ==
        std::vector<std::string>{"from-fb"});
  CHECK(objects(f.run("LATEST")) == std::vector<std::string>{"from-fb"});

  const auto fallback = f.run("MAXSOURCEMETADATA", {{"metadataProperty", "urn:missing"}});
  CHECK(objects(fallback) == std::vector<std::string>{"from-db"});
  CHECK(fallback.warnings.size() == 1);
  CHECK_THROWS_AS(f.run("MAXSOURCEMETADATA"), MissingParam);
}

TEST_CASE("AVG over the Berlin longitudes") {
  Fixture f;
  f.add(L("13.399"), "http://dbpedia.org", 0.9);
  f.add(L("13.383"), "http://rdf.freebase.com", 0.8);
  f.sort();
  const auto r = f.run("AVG");
  REQUIRE(r.quads.size() == 1);
  CHECK(r.quads[0].quad.object ==
        Node::typed_literal("13.391", std::string(vocab::kXsdDouble)));
  CHECK(r.quads[0].quality >= 0.8490);
  CHECK(r.quads[0].quality <= 0.8500);
  CHECK(r.quads[0].sources.size() == 2);
}

TEST_CASE("mediating functions") {
  Fixture f;
  f.add(L("1"), "urn:g1", 1.0);
  f.add(L("2"), "urn:g2", 1.0);
  f.add(L("3"), "urn:g3", 1.0);
  f.add(L("3"), "urn:g4", 1.0);
  f.sort();
  CHECK(objects(f.run("SUM")) == std::vector<std::string>{"9"});
  CHECK(objects(f.run("MEDIAN")) == std::vector<std::string>{"2.5"});
  CHECK(objects(f.run("COUNT")) == std::vector<std::string>{"3"});
  CHECK(f.run("COUNT").quads[0].quad.object.datatype() == vocab::kXsdInteger);
  CHECK(objects(f.run("CONCAT")) == std::vector<std::string>{"1; 2; 3"});
  CHECK(objects(f.run("CONCAT", {{"separator", "|"}})) == std::vector<std::string>{"1|2|3"});
  CHECK(objects(f.run("CONSTANT", {{"value", "fixed"}})) == std::vector<std::string>{"fixed"});
  CHECK(f.run("CONSTANT", {{"value", "<urn:x>"}}).quads[0].quad.object == U("urn:x"));
  CHECK_THROWS_AS(f.run("CONSTANT"), MissingParam);
}

TEST_CASE("non-numeric values under RETURN_ALL and IGNORE") {
  Fixture f;
  f.add(L("1"), "urn:g1", 1.0);
  f.add(L("3"), "urn:g2", 1.0);
  f.add(L("n/a"), "urn:g3", 1.0);
  f.sort();
  CHECK(objects(f.run("AVG")) == std::vector<std::string>{"2", "n/a"});
  const auto ignored = f.run("AVG", {}, ErrorStrategy::Ignore);
  CHECK(objects(ignored) == std::vector<std::string>{"2"});
  CHECK(ignored.quads[0].sources == std::vector<Node>{U("urn:g1"), U("urn:g2")});

  Fixture text;
  text.add(L("x"), "urn:g1", 1.0);
  CHECK(text.run("SUM", {}, ErrorStrategy::Ignore).quads.empty());
  CHECK(objects(text.run("SUM")) == std::vector<std::string>{"x"});
}

TEST_CASE("support affects BEST but not AVG") {
  Fixture base;
  base.add(L("10"), "urn:g1", 0.5);
  base.add(L("20"), "urn:g2", 0.5);
  Fixture dup = base;
  dup.add(L("10"), "urn:g3", 0.5);
  base.sort();
  dup.sort();
  CHECK(dup.run("BEST").quads[0].quality > base.run("BEST").quads[0].quality);

  Fixture agree;
  agree.add(L("10"), "urn:g1", 0.5);
  Fixture agree2 = agree;
  agree2.add(L("10"), "urn:g2", 0.5);
  agree2.sort();
  CHECK(agree2.run("AVG").quads[0].quality <= agree.run("AVG").quads[0].quality);
}

TEST_CASE("deciding outputs come from the cluster") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 50; ++round) {
    Fixture f;
    for (int i = 0; i < 6; ++i) {
      f.add(L(std::to_string(rng() % 5)), "urn:g" + std::to_string(rng() % 4), 0.1 * (rng() % 10));
    }
    f.sort();
    f.quads.erase(std::unique(f.quads.begin(), f.quads.end()), f.quads.end());
    for (const auto& d : registered_functions()) {
      if (d.kind != FunctionKind::Deciding) continue;
      ResolutionStrategy s;
      s.function_name = std::string(d.name);
      s.params = {{"n", "2"}, {"threshold", "0.3"}, {"min", "1"}, {"source", "urn:g1"},
                  {"metadataProperty", std::string(vocab::kOdcsScore)}};
      for (const auto& r : resolve_cluster(f.cluster(), f.context(), s).quads) {
        const bool present = std::any_of(f.quads.begin(), f.quads.end(), [&](const Quad& q) {
          return q.object == r.quad.object;
        });
        REQUIRE(present);
        REQUIRE(!r.sources.empty());
        REQUIRE(r.quality >= 0.0);
        REQUIRE(r.quality <= 1.0);
      }
    }
  }
}
