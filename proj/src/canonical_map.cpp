// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/canonical_map.hpp"

#include <algorithm>
#include <limits>

#include "quadfuse/nquads.hpp"

namespace quadfuse {

DisjointSet::DisjointSet(std::size_t size) : parent_(size), rank_(size, 0) {
  for (std::size_t i = 0; i < size; ++i) {
    parent_[i] = static_cast<std::uint32_t>(i);
  }
}

std::uint32_t DisjointSet::add() {
  const auto id = static_cast<std::uint32_t>(parent_.size());
  parent_.push_back(id);
  rank_.push_back(0);
  return id;
}

std::uint32_t DisjointSet::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSet::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) {
    return false;
  }
  if (rank_[a] < rank_[b]) {
    std::swap(a, b);
  }
  parent_[b] = a;
  if (rank_[a] == rank_[b]) {
    ++rank_[a];
  }
  return true;
}

std::vector<std::string> default_link_predicates() {
  return {std::string(vocab::kOwlSameAs), std::string(vocab::kOdcsEquivalent)};
}

LinkExtraction extract_links(std::span<const Quad> quads,
                             std::span<const std::string> link_predicates) {
  LinkExtraction result;
  for (const Quad& q : quads) {
    if (!q.predicate.is_uri() ||
        std::find(link_predicates.begin(), link_predicates.end(),
                  q.predicate.value()) == link_predicates.end()) {
      continue;
    }
    if (!q.subject.is_uri() || !q.object.is_uri()) {
      ++result.skipped;
      continue;
    }
    result.links.push_back({q.subject.value(), q.object.value()});
  }
  return result;
}

namespace {

std::uint64_t hash_of(std::string_view s) { return std::hash<std::string_view>{}(s); }

int ceil_log2(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace

std::uint32_t CanonicalMap::lookup(std::string_view iri) const {
  if (slots_.empty()) {
    return kNone;
  }
  const auto tag = static_cast<std::uint32_t>(hash_of(iri) >> 32);
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = tag >> (32 - slot_bits_);; i = (i + 1) & mask) {
    const Slot& slot = slots_[i];
    if (slot.id == kNone) {
      return kNone;
    }
    if (slot.tag == tag && name(slot.id) == iri) {
      return slot.id;
    }
  }
}

const std::string* CanonicalMap::find(std::string_view iri) const {
  const std::uint32_t id = lookup(iri);
  return id == kNone ? nullptr : &representatives_[component_[id]];
}

std::string_view CanonicalMap::canonical_of(std::string_view iri) const {
  const std::string* rep = find(iri);
  return rep ? std::string_view(*rep) : iri;
}

Node CanonicalMap::canonical_of(const Node& node) const {
  if (!node.is_uri()) {
    return node;
  }
  const std::string* rep = find(node.value());
  return rep ? Node::uri(*rep) : node;
}

std::vector<std::pair<std::string, std::string>>
CanonicalMap::non_trivial_mappings() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::uint32_t id = 0; id + 1 < offsets_.size(); ++id) {
    const std::string& rep = representatives_[component_[id]];
    if (name(id) != rep) {
      out.emplace_back(std::string(name(id)), rep);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CanonicalMap build_canonical_mapping(
    std::span<const Link> links, std::span<const std::string> preferred_namespaces) {
  CanonicalMap map;
  const std::size_t endpoints = 2 * links.size();
  auto endpoint = [&](std::size_t j) -> std::string_view {
    return (j & 1) ? links[j >> 1].second : links[j >> 1].first;
  };

  // Stage endpoints into partitions keyed by the high hash bits.
  struct Staged {
    std::uint64_t hash;
    std::uint32_t endpoint;
    std::uint32_t length;
  };
  const int partition_bits = std::min(ceil_log2((endpoints + 8191) / 8192), 16);
  const std::size_t partitions = std::size_t{1} << partition_bits;
  auto partition_of = [&](std::uint64_t hash) {
    return partition_bits == 0 ? std::size_t{0}
                               : static_cast<std::size_t>(hash >> (64 - partition_bits));
  };
  std::vector<std::size_t> record_start(partitions + 1, 0);
  std::vector<std::size_t> byte_start(partitions + 1, 0);
  for (std::size_t j = 0; j < endpoints; ++j) {
    const std::string_view s = endpoint(j);
    const std::size_t p = partition_of(hash_of(s));
    ++record_start[p + 1];
    byte_start[p + 1] += s.size();
  }
  for (std::size_t p = 0; p < partitions; ++p) {
    record_start[p + 1] += record_start[p];
    byte_start[p + 1] += byte_start[p];
  }
  std::vector<Staged> staged(endpoints);
  std::string bytes(byte_start[partitions], '\0');
  {
    std::vector<std::size_t> record_pos(record_start.begin(), record_start.end() - 1);
    std::vector<std::size_t> byte_pos(byte_start.begin(), byte_start.end() - 1);
    for (std::size_t j = 0; j < endpoints; ++j) {
      const std::string_view s = endpoint(j);
      const std::uint64_t hash = hash_of(s);
      const std::size_t p = partition_of(hash);
      staged[record_pos[p]++] = {hash, static_cast<std::uint32_t>(j),
                                 static_cast<std::uint32_t>(s.size())};
      s.copy(bytes.data() + byte_pos[p], s.size());
      byte_pos[p] += s.size();
    }
  }

  // Deduplicate each partition; ids follow partition order.
  constexpr std::uint32_t kNone = CanonicalMap::kNone;
  std::vector<std::uint32_t> staged_id(endpoints);
  std::vector<std::uint32_t> tags;
  map.arena_.reserve(bytes.size());
  std::vector<std::uint32_t> local;
  for (std::size_t p = 0; p < partitions; ++p) {
    const std::size_t first = record_start[p];
    const std::size_t size = record_start[p + 1] - first;
    if (size == 0) continue;
    local.assign(std::size_t{1} << ceil_log2(2 * size), kNone);
    const std::size_t mask = local.size() - 1;
    std::size_t offset = byte_start[p];
    for (std::size_t r = first; r < first + size; ++r) {
      const Staged& rec = staged[r];
      const std::string_view s(bytes.data() + offset, rec.length);
      offset += rec.length;
      std::size_t i = rec.hash & mask;
      for (;; i = (i + 1) & mask) {
        const std::uint32_t id = local[i];
        if (id == kNone) {
          const auto fresh = static_cast<std::uint32_t>(tags.size());
          tags.push_back(static_cast<std::uint32_t>(rec.hash >> 32));
          map.arena_.append(s);
          map.offsets_.push_back(map.arena_.size());
          local[i] = fresh;
          staged_id[r] = fresh;
          break;
        }
        if (tags[id] == static_cast<std::uint32_t>(rec.hash >> 32) && map.name(id) == s) {
          staged_id[r] = id;
          break;
        }
      }
    }
  }
  std::string().swap(bytes);

  // Route ids back to endpoint order through blocks of neighbouring endpoints.
  std::vector<std::uint32_t> endpoint_id(endpoints);
  {
    const int block_bits = ceil_log2((endpoints + 8191) / 8192);
    const int shift = ceil_log2(endpoints) - block_bits;
    std::vector<std::size_t> block_pos((std::size_t{1} << block_bits) + 1, 0);
    for (const Staged& rec : staged) ++block_pos[(rec.endpoint >> shift) + 1];
    for (std::size_t b = 1; b < block_pos.size(); ++b) block_pos[b] += block_pos[b - 1];
    std::vector<std::pair<std::uint32_t, std::uint32_t>> routed(endpoints);
    for (std::size_t r = 0; r < endpoints; ++r) {
      routed[block_pos[staged[r].endpoint >> shift]++] = {staged[r].endpoint, staged_id[r]};
    }
    for (const auto& [j, id] : routed) endpoint_id[j] = id;
  }
  std::vector<Staged>().swap(staged);
  std::vector<std::uint32_t>().swap(staged_id);

  if (!tags.empty()) {
    map.slot_bits_ = std::max(ceil_log2(2 * tags.size()), 4);
    map.slots_.assign(std::size_t{1} << map.slot_bits_, CanonicalMap::Slot{});
    const std::size_t mask = map.slots_.size() - 1;
    for (std::uint32_t id = 0; id < tags.size(); ++id) {
      std::size_t i = tags[id] >> (32 - map.slot_bits_);
      while (map.slots_[i].id != kNone) i = (i + 1) & mask;
      map.slots_[i] = {tags[id], id};
    }
  }

  const auto count = static_cast<std::uint32_t>(map.mapped_count());
  DisjointSet forest(count);
  for (std::size_t i = 0; i < links.size(); ++i) {
    forest.unite(endpoint_id[2 * i], endpoint_id[2 * i + 1]);
  }
  std::vector<std::uint32_t>().swap(endpoint_id);

  constexpr std::uint32_t kNoPreference = kNone;
  auto preference_rank = [&](std::string_view iri) {
    for (std::size_t i = 0; i < preferred_namespaces.size(); ++i) {
      if (iri.starts_with(preferred_namespaces[i])) {
        return static_cast<std::uint32_t>(i);
      }
    }
    return kNoPreference;
  };

  // Best member per root. The second pass turns `rank` into the dense
  // component id and clears `id` once the root has been numbered.
  struct Best {
    std::uint32_t id = kNone;
    std::uint32_t rank = kNoPreference;
  };
  std::vector<Best> best(count);
  std::vector<std::uint32_t>& component = map.component_;
  component.resize(count);
  for (std::uint32_t id = 0; id < count; ++id) {
    const std::uint32_t r = component[id] = forest.find(id);
    const std::uint32_t rank =
        preferred_namespaces.empty() ? kNoPreference : preference_rank(map.name(id));
    Best& current = best[r];
    if (current.id == kNone || rank < current.rank ||
        (rank == current.rank && map.name(id) < map.name(current.id))) {
      current = {id, rank};
    }
  }
  for (std::uint32_t id = 0; id < count; ++id) {
    Best& root = best[component[id]];
    if (root.id != kNone) {
      root.rank = static_cast<std::uint32_t>(map.representatives_.size());
      map.representatives_.emplace_back(map.name(root.id));
      root.id = kNone;
    }
    component[id] = root.rank;
  }
  return map;
}

std::string export_canonical_mapping(const CanonicalMap& map) {
  const Node same_as = Node::uri(std::string(vocab::kOwlSameAs));
  std::string out;
  for (const auto& [member, rep] : map.non_trivial_mappings()) {
    out += serialize_node(Node::uri(member));
    out.push_back(' ');
    out += serialize_node(same_as);
    out.push_back(' ');
    out += serialize_node(Node::uri(rep));
    out += " .\n";
  }
  return out;
}

}  // namespace quadfuse
