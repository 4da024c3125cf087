#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

#include "hyperlearn/hypergraph.hpp"

namespace hyperlearn {

struct MatchingSpec {
  std::size_t n = 0;
  std::map<std::size_t, std::size_t> size_counts;  // edge size -> number of edges
  std::uint64_t seed = 0;
};

// Uniformly random placement of the requested edges on shuffled vertices;
// vertices left over stay isolated.
Hypergraph gen_matching(const MatchingSpec& spec);

// A mixed-size matching covering all but at most one vertex: one edge of size
// floor(sqrt n), and sizes 8, 5, 3 and 2 filling the rest.
MatchingSpec dense_matching_spec(std::size_t n, std::uint64_t seed);

struct LowDegreeSpec {
  std::size_t n = 0;
  std::size_t max_degree = 2;
  std::size_t max_size = 2;
  double size_ratio = 1.0;  // edge sizes are drawn from [ceil(max_size / size_ratio), max_size]
  std::size_t edge_count = 0;
  std::uint64_t seed = 0;
};

struct LowDegreeInstance {
  Hypergraph graph;
  std::size_t degree = 0;
  std::size_t max_size = 0;
  double size_ratio = 0.0;
};

// Greedy rejection sampling of an antichain with the requested degree and
// size bounds. Throws InfeasibleError after 1000 * edge_count failed draws.
LowDegreeInstance gen_low_degree(const LowDegreeSpec& spec);

// Half of the edge capacity max_degree * n / max_size.
std::size_t default_low_degree_edge_count(std::size_t n, std::size_t max_degree, std::size_t max_size);

// Random antichain with up to `edge_count` edges of sizes 1..max_size.
Hypergraph gen_antichain(std::size_t n, std::size_t edge_count, std::size_t max_size, std::uint64_t seed);

}  // namespace hyperlearn
