#include "hyperlearn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/random.hpp"

namespace hyperlearn {

namespace {

std::vector<Vertex> shuffled_vertices(std::size_t n, SplitMix64& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

bool nested_with_any(const Edge& e, const std::vector<Edge>& edges, const std::vector<std::vector<std::size_t>>& incident) {
  for (Vertex v : e) {
    for (std::size_t id : incident[v]) {
      if (edges[id].is_subset_of(e) || e.is_subset_of(edges[id])) return true;
    }
  }
  return false;
}

}  // namespace

Hypergraph gen_matching(const MatchingSpec& spec) {
  std::size_t needed = 0;
  for (auto [size, count] : spec.size_counts) {
    if (size == 0 && count > 0) throw InputError("matching edges must have size at least 1");
    needed += size * count;
  }
  if (needed > spec.n) {
    throw InputError("requested edges need " + std::to_string(needed) + " vertices but n = " + std::to_string(spec.n));
  }
  SplitMix64 rng(stream_key(spec.seed, 0x6d61));
  auto order = shuffled_vertices(spec.n, rng);
  std::vector<Edge> edges;
  std::size_t next = 0;
  for (auto [size, count] : spec.size_counts) {
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<Vertex> ids(order.begin() + static_cast<std::ptrdiff_t>(next),
                              order.begin() + static_cast<std::ptrdiff_t>(next + size));
      next += size;
      edges.emplace_back(std::move(ids));
    }
  }
  return Hypergraph(spec.n, std::move(edges));
}

MatchingSpec dense_matching_spec(std::size_t n, std::uint64_t seed) {
  MatchingSpec spec{n, {}, seed};
  std::size_t rest = n;
  const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  if (root >= 2) {
    spec.size_counts[root] += 1;
    rest -= root;
  }
  const std::size_t share = rest;
  std::size_t used = 0;
  for (auto [size, fraction] : {std::pair{8UL, 0.10}, {5UL, 0.15}, {3UL, 0.20}}) {
    const auto count = static_cast<std::size_t>(fraction * static_cast<double>(share) / static_cast<double>(size));
    if (count > 0) spec.size_counts[size] += count;
    used += count * size;
  }
  const std::size_t pairs = (rest - used) / 2;
  if (pairs > 0) spec.size_counts[2] += pairs;
  return spec;
}

LowDegreeInstance gen_low_degree(const LowDegreeSpec& spec) {
  if (spec.max_degree < 1) throw InputError("max_degree must be at least 1");
  if (spec.size_ratio < 1.0) throw InputError("size_ratio must be at least 1");
  const double collapsed = static_cast<double>(spec.max_size) / spec.size_ratio;
  if (collapsed < 2.0) throw InputError("max_size / size_ratio must be at least 2");
  const auto smallest = static_cast<std::size_t>(std::ceil(collapsed - 1e-12));
  const double capacity = static_cast<double>(spec.max_degree * spec.n) / collapsed;
  if (static_cast<double>(spec.edge_count) > capacity + 1e-9) {
    throw InfeasibleError("edge_count " + std::to_string(spec.edge_count) + " exceeds max_degree * n / (max_size / size_ratio) = " +
                          std::to_string(capacity));
  }

  SplitMix64 rng(stream_key(spec.seed, 0x6c64));
  std::uniform_int_distribution<std::size_t> size_pick(smallest, spec.max_size);
  std::vector<std::size_t> degree(spec.n, 0);
  std::vector<std::vector<std::size_t>> incident(spec.n);
  std::vector<Edge> edges;
  std::vector<Vertex> available;
  const std::size_t max_attempts = 1000 * std::max<std::size_t>(spec.edge_count, 1);
  std::size_t attempts = 0;
  while (edges.size() < spec.edge_count) {
    if (++attempts > max_attempts) {
      throw InfeasibleError("gave up after " + std::to_string(max_attempts) + " draws with " +
                            std::to_string(edges.size()) + " of " + std::to_string(spec.edge_count) + " edges placed");
    }
    const std::size_t k = size_pick(rng);
    available.clear();
    for (std::size_t v = 0; v < spec.n; ++v) {
      if (degree[v] < spec.max_degree) available.push_back(static_cast<Vertex>(v));
    }
    if (available.size() < k) continue;
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, available.size() - 1);
      std::swap(available[i], available[pick(rng)]);
    }
    Edge e(std::vector<Vertex>(available.begin(), available.begin() + static_cast<std::ptrdiff_t>(k)));
    if (nested_with_any(e, edges, incident)) continue;
    for (Vertex v : e) {
      ++degree[v];
      incident[v].push_back(edges.size());
    }
    edges.push_back(std::move(e));
  }

  LowDegreeInstance out;
  out.graph = Hypergraph(spec.n, std::move(edges));
  out.degree = out.graph.max_degree();
  out.max_size = out.graph.max_edge_size();
  out.size_ratio = out.graph.size_ratio();
  return out;
}

std::size_t default_low_degree_edge_count(std::size_t n, std::size_t max_degree, std::size_t max_size) {
  return max_degree * n / (2 * max_size);
}

Hypergraph gen_antichain(std::size_t n, std::size_t edge_count, std::size_t max_size, std::uint64_t seed) {
  if (n == 0 || max_size == 0) return Hypergraph(n);
  SplitMix64 rng(stream_key(seed, 0x6163));
  std::uniform_int_distribution<std::size_t> size_pick(1, std::min(max_size, n));
  std::vector<std::vector<std::size_t>> incident(n);
  std::vector<Edge> edges;
  for (std::size_t attempt = 0; attempt < 50 * edge_count && edges.size() < edge_count; ++attempt) {
    Edge e(random_subset(n, size_pick(rng), rng));
    if (nested_with_any(e, edges, incident)) continue;
    for (Vertex v : e) incident[v].push_back(edges.size());
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(edges));
}

}  // namespace hyperlearn
