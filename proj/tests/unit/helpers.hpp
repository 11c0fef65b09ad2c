// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>
#include <vector>

#include "quadfuse/model.hpp"

namespace quadfuse::testing {

inline Node U(const std::string& iri) { return Node::uri(iri); }
inline Node L(const std::string& lexical) { return Node::literal(lexical); }

inline Quad Q(const std::string& s, const std::string& p, Node o, const std::string& g) {
  return make_quad(U(s), U(p), std::move(o), U(g));
}

/// Random node over a small alphabet; collisions are common.
inline Node random_node(std::mt19937_64& rng, bool allow_literal = true) {
  static const std::vector<std::string> pieces{"", "a", "b", "ab", "ba", "\xc3\xa9", "1", "10", "9"};
  std::uniform_int_distribution<int> kind(0, allow_literal ? 2 : 1);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::string text = "x" + pieces[pick(rng)] + pieces[pick(rng)];
  switch (kind(rng)) {
    case 0:
      return Node::uri("urn:" + text);
    case 1:
      return Node::blank(text);
    default:
      break;
  }
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return Node::literal(pieces[pick(rng)] + pieces[pick(rng)]);
    case 1:
      return Node::typed_literal(pieces[pick(rng)], "urn:dt:" + pieces[pick(rng)]);
    default:
      return Node::lang_literal(pieces[pick(rng)], pick(rng) % 2 ? "en" : "de");
  }
}

inline Quad random_quad(std::mt19937_64& rng) {
  Node s = random_node(rng, false);
  Node p = Node::uri("urn:p" + std::to_string(rng() % 3));
  Node o = random_node(rng);
  Node g = Node::uri("urn:g" + std::to_string(rng() % 3));
  return make_quad(std::move(s), std::move(p), std::move(o), std::move(g));
}

}  // namespace quadfuse::testing
