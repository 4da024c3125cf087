#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperlearn/vertex_set.hpp"

namespace hyperlearn {

using Edge = VertexSet;

// A hypergraph on {0..n-1}. Edges are nonempty, distinct and kept in
// lexicographic order, so two hypergraphs with the same edges compare equal.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(std::size_t n) : n_(n) {}
  Hypergraph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;
  std::size_t max_edge_size() const;
  std::size_t min_edge_size() const;
  // max |e| / min |e|, or 0 for an edgeless hypergraph.
  double size_ratio() const;

  bool is_matching() const;
  bool is_antichain() const;

  // Reference evaluation by definition; the oracle uses an indexed version.
  bool has_edge_within(const VertexSet& s) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace hyperlearn

namespace hyperlearn {

// True iff every edge of `h` lies inside some member of `family` that holds
// no other edge of `h`.
bool is_unique_edge_cover(std::span<const VertexSet> family, const Hypergraph& h);

}  // namespace hyperlearn
