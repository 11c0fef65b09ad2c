// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadfuse/model.hpp"

namespace quadfuse {

/// Union-find forest with union by rank and path halving.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t size = 0);

  /// Appends a singleton set and returns its id.
  std::uint32_t add();
  std::uint32_t find(std::uint32_t x);
  /// Returns true if two distinct sets were merged.
  bool unite(std::uint32_t a, std::uint32_t b);
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

/// An undirected identity link between two IRIs.
struct Link {
  std::string first;
  std::string second;
};

struct LinkExtraction {
  std::vector<Link> links;
  std::size_t skipped = 0;  // link statements whose endpoints are not both IRIs
};

/// Collects (subject, object) pairs of statements whose predicate is one of
/// `link_predicates`.
LinkExtraction extract_links(std::span<const Quad> quads,
                             std::span<const std::string> link_predicates);

/// owl:sameAs and odcs:equivalent.
std::vector<std::string> default_link_predicates();

/// Maps every IRI mentioned by a link to the representative of its weakly
/// connected component. IRIs not mentioned by any link are unmapped.
class CanonicalMap {
 public:
  CanonicalMap() = default;

  /// Representative of `iri`'s component, or nullptr when unmapped.
  const std::string* find(std::string_view iri) const;

  /// `iri`'s representative, or `iri` itself when unmapped.
  std::string_view canonical_of(std::string_view iri) const;
  /// Rewrites IRIs; blank nodes and literals are returned unchanged.
  Node canonical_of(const Node& node) const;

  bool empty() const noexcept { return offsets_.size() == 1; }
  std::size_t mapped_count() const noexcept { return offsets_.size() - 1; }
  std::size_t component_count() const noexcept { return representatives_.size(); }

  /// (member, representative) for every member that is not its own
  /// representative, sorted by member.
  std::vector<std::pair<std::string, std::string>> non_trivial_mappings() const;

 private:
  friend CanonicalMap build_canonical_mapping(
      std::span<const Link>, std::span<const std::string>);

  static constexpr std::uint32_t kNone = 0xffffffffu;

  // Linear-probing table indexed by the high hash bits; `tag` holds the top
  // 32 bits of the hash.
  struct Slot {
    std::uint32_t tag = 0;
    std::uint32_t id = kNone;
  };

  std::uint32_t lookup(std::string_view iri) const;
  std::string_view name(std::uint32_t id) const {
    return std::string_view(arena_).substr(offsets_[id], offsets_[id + 1] - offsets_[id]);
  }

  int slot_bits_ = 0;
  std::vector<Slot> slots_;
  std::string arena_;                   // member IRIs back to back
  std::vector<std::size_t> offsets_{0};  // member i is [offsets_[i], offsets_[i+1])
  std::vector<std::uint32_t> component_;
  std::vector<std::string> representatives_;
};

/// Builds the mapping. Each component's representative is the member
/// matching the earliest-listed preferred namespace prefix; ties and
/// components without a match fall back to the byte-wise smallest IRI.
CanonicalMap build_canonical_mapping(std::span<const Link> links,
                                     std::span<const std::string> preferred_namespaces = {});

/// N-Triples lines `<u> <owl:sameAs> <canonical(u)> .` for each non-trivial
/// mapping.
std::string export_canonical_mapping(const CanonicalMap& map);

}  // namespace quadfuse
