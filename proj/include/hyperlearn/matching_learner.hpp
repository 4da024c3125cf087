#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hyperlearn/hypergraph.hpp"
#include "hyperlearn/oracle.hpp"

namespace hyperlearn {

enum class Subroutine { kParallel, kAdaptive };

const char* subroutine_name(Subroutine sub);

struct EdgeSearchResult {
  std::optional<Edge> edge;
  std::uint64_t queries = 0;
  std::size_t rounds = 0;
  bool over_budget = false;
};

// One pair (part, rest) of the binary-search frontier.
struct FrontierEntry {
  VertexSet part;
  VertexSet rest;
};

// Called at the start of every iteration of the adaptive search with the
// current frontier and the vertices found so far.
using FrontierObserver = std::function<void(std::span<const FrontierEntry>, const VertexSet& found)>;

struct SearchOptions {
  bool strict_budget = true;  // throw BudgetViolation instead of flagging
  FrontierObserver observer;
};

// Per-call budgets. The adaptive query budget uses ceil(log2 |S|): halving
// with a ceil split needs that many levels when |S| is not a power of two.
std::uint64_t parallel_query_budget(std::size_t set_size);
std::size_t parallel_round_budget();
double adaptive_query_budget(std::size_t set_size, double size_limit);
double adaptive_round_budget(std::size_t set_size);

// Returns the unique edge inside `s` if there is one. Gate query, then every
// single-vertex deletion in one round.
EdgeSearchResult find_edge_parallel(EdgeOracle& oracle, const VertexSet& s, const SearchOptions& options = {});

// Binary search for the unique edge inside `s`, giving up once the frontier
// or the candidate grows beyond `size_limit`. The gate query shares the
// first round with the first split.
EdgeSearchResult find_edge_adaptive(EdgeOracle& oracle, const VertexSet& s, double size_limit,
                                    const SearchOptions& options = {});

// Vertices v of `pool` with Q({v}) = 1, from one round of |pool| queries.
std::vector<Vertex> find_singletons(EdgeOracle& oracle, const VertexSet& pool);

struct MatchingConfig {
  Subroutine subroutine = Subroutine::kAdaptive;
  std::optional<double> alpha;  // growth factor; defaults by subroutine
  std::uint64_t seed = 0;
  bool strict_budgets = true;
  std::function<void(const Edge&)> on_emit;  // sees every edge a subroutine returns
};

// 1 / (1 - 1 / (2 ln n)) for the adaptive subroutine, 2 for the parallel one.
double default_alpha(Subroutine sub, std::size_t n);
std::uint64_t disjoint_sample_count(std::size_t n, double alpha);
double disjoint_sample_probability(std::size_t n, double alpha, double size_limit);

struct DisjointEdgesResult {
  std::vector<Edge> edges;
  std::uint64_t samples = 0;
  std::uint64_t positives = 0;
  std::size_t budget_violations = 0;
  bool truncated = false;  // the round cap stopped some subroutine calls
};

// Samples ceil(n^alpha ln^2 n) subsets of `pool`, keeping each vertex with
// probability n^(-alpha/s), and runs the subroutine on every sample that
// holds an edge. All subroutine calls run side by side, so the whole call
// takes one sampling round plus the deepest subroutine call. Requires
// s / alpha >= 2. `phase` selects independent sample streams.
DisjointEdgesResult find_disjoint_edges(EdgeOracle& oracle, double size_limit, double alpha, const VertexSet& pool,
                                        const MatchingConfig& config, std::uint64_t phase = 0);

// Learns a hidden matching on n >= 3 vertices.
LearnOutcome find_matching(EdgeOracle& oracle, const MatchingConfig& config);

}  // namespace hyperlearn
