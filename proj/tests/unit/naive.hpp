#pragma once

// Reference implementations written from the definitions, used as test
// oracles for the optimized library code.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hyperlearn/hypergraph.hpp"

namespace naive {

using Ids = std::vector<std::uint32_t>;

inline bool contains_all(Ids big, Ids small) {
  std::sort(big.begin(), big.end());
  std::sort(small.begin(), small.end());
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline bool detects(const std::vector<Ids>& edges, const Ids& query) {
  return std::any_of(edges.begin(), edges.end(), [&](const Ids& e) { return contains_all(query, e); });
}

inline std::vector<Ids> edge_lists(const hyperlearn::Hypergraph& h) {
  std::vector<Ids> out;
  for (const auto& e : h.edges()) out.emplace_back(e.begin(), e.end());
  return out;
}

inline Ids bits_to_ids(std::uint64_t bits) {
  Ids ids;
  for (std::uint32_t v = 0; bits != 0; ++v, bits >>= 1) {
    if (bits & 1U) ids.push_back(v);
  }
  return ids;
}

}  // namespace naive
