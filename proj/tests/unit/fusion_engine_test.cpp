// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "quadfuse/errors.hpp"
#include "quadfuse/fusion_engine.hpp"
#include "quadfuse/nquads.hpp"
#include "unit/helpers.hpp"

using namespace quadfuse;
using namespace quadfuse::testing;

namespace {

const std::string kDb = "http://dbpedia.org/resource/Berlin";
const std::string kFb = "http://rdf.freebase.com/ns/en.berlin";
const std::string kNyt = "http://data.nytimes.com/N50987";
const std::string kLabel = "http://www.w3.org/2000/01/rdf-schema#label";
const std::string kPrefLabel = "http://www.w3.org/2004/02/skos/core#prefLabel";
const std::string kLong = "http://www.w3.org/2003/01/geo/wgs84_pos#long";
const std::string kFbLong = "http://rdf.freebase.com/ns/location.geocode.longitude";

std::vector<Quad> berlin_data() {
  return {Q(kDb, kLabel, L("Berlin"), "http://dbpedia.org"),
          Q(kDb, kLong, L("13.399"), "http://dbpedia.org"),
          Q(kFb, kLabel, L("Berlin"), "http://rdf.freebase.com"),
          Q(kFb, kFbLong, L("13.383"), "http://rdf.freebase.com"),
          Q(kNyt, kPrefLabel, L("Berlin (Germany)"), "http://data.nytimes.com")};
}

std::vector<Link> berlin_links() {
  return {{kLabel, kPrefLabel}, {kLong, kFbLong}, {kDb, kFb}, {kDb, kNyt}};
}

std::vector<Quad> berlin_metadata() {
  const std::string score(vocab::kOdcsScore);
  return {Q("http://dbpedia.org", score, L("0.9"), "urn:m"),
          Q("http://rdf.freebase.com", score, L("0.8"), "urn:m"),
          Q("http://data.nytimes.com", score, L("0.8"), "urn:m")};
}

FusionConfig berlin_config() {
  FusionConfig c;
  c.preferred_namespaces = {"http://dbpedia.org/", "http://www.w3.org/"};
  return c;
}

ResolutionStrategy strategy(const std::string& function) {
  ResolutionStrategy s;
  s.function_name = function;
  return s;
}

}  // namespace

TEST_CASE("resolve_uris rewrites subject, predicate and object but not graphs") {
  const auto links = berlin_links();
  const std::vector<std::string> prefer{"http://dbpedia.org/", "http://www.w3.org/"};
  const CanonicalMap map = build_canonical_mapping(links, prefer);
  const auto out = resolve_uris({Q(kFb, kFbLong, L("13.383"), "http://rdf.freebase.com"),
                                 Q("urn:x", "urn:p", U(kNyt), kFb),
                                 Q("urn:x", "urn:p", L(kNyt), kFb)},
                                map);
  CHECK(out[0] == Q(kDb, kLong, L("13.383"), "http://rdf.freebase.com"));
  CHECK(out[1].object == U(kDb));
  CHECK(out[1].graph == U(kFb));
  CHECK(out[2].object == L(kNyt));

  const auto data = berlin_data();
  CHECK(resolve_uris(data, CanonicalMap{}) == data);
}

TEST_CASE("sort_and_dedupe matches a sort-unique reference") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 200; ++round) {
    std::vector<Quad> quads;
    for (int i = static_cast<int>(rng() % 40); i > 0; --i) quads.push_back(random_quad(rng));
    if (!quads.empty()) quads.push_back(quads.front());

    std::set<std::string> reference;
    for (const Quad& q : quads) reference.insert(serialize_quad(q));
    const auto got = sort_and_dedupe(quads);
    REQUIRE(got.size() == reference.size());
    REQUIRE(std::is_sorted(got.begin(), got.end()));
    REQUIRE(std::adjacent_find(got.begin(), got.end()) == got.end());
    for (const Quad& q : got) REQUIRE(reference.count(serialize_quad(q)) == 1);
  }
  const Quad a = Q("urn:s", "urn:p", L("o"), "urn:g1");
  const Quad b = Q("urn:s", "urn:p", L("o"), "urn:g2");
  CHECK(sort_and_dedupe({a, a}).size() == 1);
  CHECK(sort_and_dedupe({b, a}) == std::vector<Quad>{a, b});
}

TEST_CASE("cluster_quads splits on subject and predicate") {
  const auto links = berlin_links();
  const std::vector<std::string> prefer{"http://dbpedia.org/", "http://www.w3.org/"};
  const auto sorted = sort_and_dedupe(resolve_uris(berlin_data(), build_canonical_mapping(links, prefer)));
  const auto clusters = cluster_quads(sorted);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].predicate() == U(kLabel));
  CHECK(clusters[0].size() == 3);
  CHECK(clusters[1].predicate() == U(kLong));
  CHECK(clusters[1].size() == 2);

  const std::vector<Quad> one{Q("urn:s", "urn:p", L("o"), "urn:g")};
  CHECK(cluster_quads(one).size() == 1);
  std::vector<Quad> distinct;
  for (int i = 0; i < 7; ++i) distinct.push_back(Q("urn:s" + std::to_string(i), "urn:p", L("o"), "urn:g"));
  CHECK(cluster_quads(distinct).size() == 7);
  CHECK(cluster_quads({}).empty());
}

TEST_CASE("select_strategy honours mapped property aliases") {
  const auto links = berlin_links();
  const std::vector<std::string> prefer{"http://www.w3.org/"};
  const CanonicalMap map = build_canonical_mapping(links, prefer);
  ResolutionPolicy policy;
  policy.per_property[kLabel] = strategy("BEST");
  CHECK(select_strategy(U(kLabel), policy, map).function_name == "BEST");
  CHECK(select_strategy(U("urn:other"), policy, map).function_name == "ALL");

  ResolutionPolicy aliases;
  aliases.per_property[kPrefLabel] = strategy("ANY");
  CHECK(select_strategy(U(kLabel), aliases, map).function_name == "ANY");
  aliases.per_property[kLabel] = strategy("BEST");
  CHECK(select_strategy(U(kLabel), aliases, map).function_name == "BEST");
}

TEST_CASE("fuse: Berlin example") {
  ResolutionPolicy policy;
  policy.per_property[kLabel] = strategy("BEST");
  policy.per_property[kLong] = strategy("AVG");
  const auto metadata = berlin_metadata();
  const auto links = berlin_links();
  const FusionResult r = fuse(berlin_data(), metadata, links, policy, berlin_config());
  REQUIRE(r.quads.size() == 2);
  CHECK(r.quads[0].quad.subject == U(kDb));
  CHECK(r.quads[0].quad.object == L("Berlin"));
  CHECK(r.quads[0].sources == std::vector<Node>{U("http://dbpedia.org"), U("http://rdf.freebase.com")});
  CHECK(r.quads[1].quad.predicate == U(kLong));
  CHECK(r.quads[1].quad.object.value() == "13.391");
  CHECK(r.input_quads == 5);
  CHECK(r.clusters == 2);

  CHECK(fuse({}, metadata, links, policy, berlin_config()).quads.empty());
}

TEST_CASE("fuse: singleton clusters under ALL keep their source score") {
  const std::string score(vocab::kOdcsScore);
  std::vector<Quad> data, metadata;
  for (int i = 0; i < 10; ++i) {
    const std::string g = "urn:g" + std::to_string(i);
    data.push_back(Q("urn:s" + std::to_string(i), "urn:p", L("v"), g));
    metadata.push_back(Q(g, score, L(std::to_string(i / 10.0)), "urn:m"));
  }
  const FusionResult r = fuse(data, metadata, {}, ResolutionPolicy{}, FusionConfig{});
  REQUIRE(r.quads.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(r.quads[i].quality == doctest::Approx(i / 10.0));
}

TEST_CASE("fuse: invalid policy aborts before processing") {
  ResolutionPolicy policy;
  policy.per_property["urn:p"] = strategy("FROBNICATE");
  CHECK_THROWS_AS(fuse(berlin_data(), {}, {}, policy, FusionConfig{}), UnknownFunction);
  policy.per_property["urn:p"] = strategy("TOPN");
  CHECK_THROWS_AS(fuse(berlin_data(), {}, {}, policy, FusionConfig{}), MissingParam);
}

TEST_CASE("fuse: output is independent of worker count and input order") {
  std::mt19937_64 rng(4);
  std::vector<Quad> data;
  for (int i = 0; i < 3000; ++i) {
    data.push_back(Q("urn:s" + std::to_string(rng() % 400), "urn:p" + std::to_string(rng() % 3),
                     L(std::to_string(rng() % 6)), "urn:g" + std::to_string(rng() % 5)));
  }
  std::vector<Link> links;
  for (int i = 0; i < 100; ++i) {
    links.push_back({"urn:s" + std::to_string(rng() % 400), "urn:s" + std::to_string(rng() % 400)});
  }
  ResolutionPolicy policy;
  policy.per_property["urn:p1"] = strategy("BEST");
  policy.per_property["urn:p2"] = strategy("AVG");

  FusionConfig one;
  const std::string reference = serialize_resolved(fuse(data, {}, links, policy, one).quads, {});
  FusionConfig four;
  four.workers = 4;
  std::shuffle(data.begin(), data.end(), rng);
  const FusionResult r = fuse(data, {}, links, policy, four);
  CHECK(serialize_resolved(r.quads, {}) == reference);

  // Source soundness and closure.
  const auto canonical = sort_and_dedupe(resolve_uris(data, r.canonical));
  for (const ResolvedQuad& q : r.quads) {
    REQUIRE(!q.sources.empty());
    for (const Node& g : q.sources) {
      const bool found = std::any_of(canonical.begin(), canonical.end(), [&](const Quad& c) {
        return c.subject == q.quad.subject && c.predicate == q.quad.predicate && c.graph == g;
      });
      REQUIRE(found);
    }
  }
}
