#include "hyperlearn/hypergraph.hpp"

#include <algorithm>

#include "hyperlearn/errors.hpp"

namespace hyperlearn {

Hypergraph::Hypergraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.empty()) throw InputError("hypergraph edges must be nonempty");
    if (e.back() >= n_) {
      throw InputError("edge " + e.to_string() + " has a vertex outside 0.." + std::to_string(n_) + "-1");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) throw InputError("duplicate edge " + dup->to_string());
}

std::vector<std::size_t> Hypergraph::degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) {
    for (Vertex v : e) ++deg[v];
  }
  return deg;
}

std::size_t Hypergraph::max_degree() const {
  auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::size_t Hypergraph::max_edge_size() const {
  std::size_t best = 0;
  for (const Edge& e : edges_) best = std::max(best, e.size());
  return best;
}

std::size_t Hypergraph::min_edge_size() const {
  if (edges_.empty()) return 0;
  std::size_t best = edges_.front().size();
  for (const Edge& e : edges_) best = std::min(best, e.size());
  return best;
}

double Hypergraph::size_ratio() const {
  if (edges_.empty()) return 0.0;
  return static_cast<double>(max_edge_size()) / static_cast<double>(min_edge_size());
}

bool Hypergraph::is_matching() const { return max_degree() <= 1; }

bool Hypergraph::is_antichain() const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (std::size_t j = 0; j < edges_.size(); ++j) {
      if (i != j && edges_[i].is_subset_of(edges_[j])) return false;
    }
  }
  return true;
}

bool Hypergraph::has_edge_within(const VertexSet& s) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.is_subset_of(s); });
}

}  // namespace hyperlearn

namespace hyperlearn {

bool is_unique_edge_cover(std::span<const VertexSet> family, const Hypergraph& h) {
  const auto& edges = h.edges();
  std::vector<bool> covered(edges.size(), false);
  for (const VertexSet& s : family) {
    std::size_t inside = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < edges.size() && inside < 2; ++i) {
      if (edges[i].is_subset_of(s)) {
        ++inside;
        which = i;
      }
    }
    if (inside == 1) covered[which] = true;
  }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

}  // namespace hyperlearn
