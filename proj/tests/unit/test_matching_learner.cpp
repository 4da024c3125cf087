#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/generators.hpp"
#include "hyperlearn/matching_learner.hpp"
#include "naive.hpp"

using namespace hyperlearn;

namespace {

Hypergraph graph(std::size_t n, std::vector<Edge> edges) { return Hypergraph(n, std::move(edges)); }

std::set<Edge> edge_set(const Hypergraph& h) { return {h.edges().begin(), h.edges().end()}; }

}  // namespace

TEST(FindEdgeParallel, ReturnsTheUniqueEdge) {
  EdgeOracle oracle(graph(5, {Edge{1, 2}}));
  const auto r = find_edge_parallel(oracle, VertexSet{1, 2, 3});
  ASSERT_TRUE(r.edge);
  EXPECT_EQ(*r.edge, (Edge{1, 2}));
  EXPECT_EQ(r.queries, 4U);
  EXPECT_EQ(r.rounds, 2U);
  EXPECT_EQ(oracle.ledger().per_round, (std::vector<std::uint64_t>{1, 3}));
}

TEST(FindEdgeParallel, TwoEdgesGiveNone) {
  EdgeOracle oracle(graph(5, {Edge{1, 2}, Edge{3, 4}}));
  EXPECT_FALSE(find_edge_parallel(oracle, VertexSet{1, 2, 3, 4}).edge);
}

TEST(FindEdgeParallel, NegativeGateCostsOneQuery) {
  EdgeOracle oracle(graph(5, {Edge{1, 2}}));
  const auto r = find_edge_parallel(oracle, VertexSet{1, 3});
  EXPECT_FALSE(r.edge);
  EXPECT_EQ(r.queries, 1U);
  EXPECT_EQ(oracle.ledger().total_queries, 1U);
}

TEST(FindEdgeAdaptive, FindsAPairWithinBudget) {
  EdgeOracle oracle(graph(9, {Edge{1, 2}}));
  const auto r = find_edge_adaptive(oracle, VertexSet::range(1, 9), 2);
  ASSERT_TRUE(r.edge);
  EXPECT_EQ(*r.edge, (Edge{1, 2}));
  EXPECT_LE(r.queries, 15U);
  EXPECT_LE(static_cast<double>(r.rounds), std::log2(8.0) + 2);
  EXPECT_EQ(r.queries, oracle.ledger().total_queries);
  EXPECT_EQ(r.rounds, oracle.ledger().rounds());
}

TEST(FindEdgeAdaptive, TwoEdgesGiveNoneOrATrueEdge) {
  EdgeOracle oracle(graph(5, {Edge{1, 2}, Edge{3, 4}}));
  const auto r = find_edge_adaptive(oracle, VertexSet{1, 2, 3, 4}, 4);
  if (r.edge) {
    EXPECT_TRUE(*r.edge == (Edge{1, 2}) || *r.edge == (Edge{3, 4}));
  }
}

TEST(FindEdgeAdaptive, EdgeLargerThanTheLimitGivesNone) {
  EdgeOracle oracle(graph(9, {Edge{1, 2, 3}}));
  const auto r = find_edge_adaptive(oracle, VertexSet::range(1, 9), 2);
  EXPECT_FALSE(r.edge);
  EXPECT_FALSE(r.over_budget);
}

TEST(FindEdgeAdaptive, NegativeSetCostsOneRound) {
  EdgeOracle oracle(graph(9, {Edge{0, 8}}));
  const auto r = find_edge_adaptive(oracle, VertexSet::range(1, 8), 3);
  EXPECT_FALSE(r.edge);
  EXPECT_EQ(r.rounds, 1U);
}

TEST(FindEdgeAdaptive, SingletonEdge) {
  EdgeOracle oracle(graph(9, {Edge{4}}));
  const auto r = find_edge_adaptive(oracle, VertexSet::range(0, 9), 1);
  ASSERT_TRUE(r.edge);
  EXPECT_EQ(*r.edge, (Edge{4}));
}

TEST(FindEdgeAdaptive, RejectsASizeLimitBelowOne) {
  EdgeOracle oracle(graph(4, {}));
  EXPECT_THROW(find_edge_adaptive(oracle, VertexSet{1, 2}, 0.5), InputError);
}

// Random sets holding one hidden edge among distractor edges that stick out
// of the set: the search must find the edge, stay within budget, and keep
// the frontier invariants at every iteration.
TEST(FindEdgeAdaptive, FrontierInvariantsAndBudgetsOnRandomSets) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 40 + gen() % 200;
    const std::size_t k = 1 + gen() % 6;
    const double size_limit = static_cast<double>(k + gen() % 3);
    const Hypergraph h = gen_matching({n, {{k, 1}, {3, 5}}, gen()});
    const Edge target = *std::find_if(h.edges().begin(), h.edges().end(), [&](const Edge& e) { return e.size() == k; });
    std::vector<Vertex> ids(target.begin(), target.end());
    for (const auto& e : h.edges()) {
      if (e == target) continue;
      // all but one vertex of each distractor
      ids.insert(ids.end(), e.begin(), e.end() - 1);
    }
    for (Vertex v = 0; v < n; ++v) {
      bool on_edge = false;
      for (const auto& e : h.edges()) on_edge = on_edge || e.contains(v);
      if (!on_edge && gen() % 2 == 0) ids.push_back(v);
    }
    const VertexSet s(ids);

    std::size_t iterations = 0;
    SearchOptions options;
    options.observer = [&](std::span<const FrontierEntry> frontier, const VertexSet& found) {
      ++iterations;
      EXPECT_LE(static_cast<double>(frontier.size()), size_limit);
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        EXPECT_TRUE(frontier[i].part.intersects(target)) << "frontier part misses the edge";
        EXPECT_TRUE(target.is_subset_of(frontier[i].part.set_union(frontier[i].rest).set_union(found)));
        for (std::size_t j = i + 1; j < frontier.size(); ++j) {
          EXPECT_FALSE(frontier[i].part.intersects(frontier[j].part)) << "frontier parts overlap";
        }
      }
      for (Vertex v : target) {
        int homes = found.contains(v) ? 1 : 0;
        for (const auto& entry : frontier) homes += entry.part.contains(v) ? 1 : 0;
        EXPECT_EQ(homes, 1) << "vertex " << v << " of the edge is lost or duplicated";
      }
    };
    EdgeOracle oracle(h);
    const auto r = find_edge_adaptive(oracle, s, size_limit, options);
    ASSERT_TRUE(r.edge) << s.to_string();
    EXPECT_EQ(*r.edge, target);
    EXPECT_GT(iterations, 0U);
    EXPECT_LE(static_cast<double>(r.queries), adaptive_query_budget(s.size(), size_limit));
    EXPECT_LE(static_cast<double>(r.rounds), std::log2(static_cast<double>(s.size())) + 2);
  }
}

TEST(FindSingletons, Examples) {
  {
    EdgeOracle oracle(graph(8, {Edge{5}}));
    EXPECT_EQ(find_singletons(oracle, VertexSet::range(0, 8)), (std::vector<Vertex>{5}));
    EXPECT_EQ(oracle.ledger().total_queries, 8U);
    EXPECT_EQ(oracle.ledger().rounds(), 1U);
  }
  {
    EdgeOracle oracle(graph(8, {Edge{1, 2}}));
    EXPECT_TRUE(find_singletons(oracle, VertexSet::range(0, 8)).empty());
  }
  {
    EdgeOracle oracle(graph(8, {}));
    EXPECT_TRUE(find_singletons(oracle, VertexSet::range(0, 8)).empty());
  }
}

TEST(Parameters, DefaultsAndSampling) {
  EXPECT_DOUBLE_EQ(default_alpha(Subroutine::kParallel, 100), 2.0);
  EXPECT_NEAR(default_alpha(Subroutine::kAdaptive, 100), 1.0 / (1.0 - 1.0 / (2.0 * std::log(100.0))), 1e-15);
  EXPECT_THROW(default_alpha(Subroutine::kAdaptive, 2), InputError);
  // ceil(256^2 * ln(256)^2)
  EXPECT_EQ(disjoint_sample_count(256, 2.0), 2015166U);
  EXPECT_DOUBLE_EQ(disjoint_sample_probability(256, 2.0, 4.0), 1.0 / 16.0);
}

TEST(FindDisjointEdges, EmptyHiddenGraph) {
  EdgeOracle oracle(graph(64, {}));
  MatchingConfig config;
  config.seed = 3;
  const auto r = find_disjoint_edges(oracle, 4, 2, VertexSet::range(0, 64), config);
  EXPECT_TRUE(r.edges.empty());
  EXPECT_EQ(r.positives, 0U);
  EXPECT_EQ(oracle.ledger().rounds(), 1U);
  EXPECT_EQ(oracle.ledger().total_queries, r.samples);
}

TEST(FindDisjointEdges, RejectsSmallSizeLimits) {
  EdgeOracle oracle(graph(16, {}));
  EXPECT_THROW(find_disjoint_edges(oracle, 3, 2, VertexSet::range(0, 16), {}), InputError);
}

// Covering check with an independent sampler: at the planned sample count and
// probability, every edge with size in [s/alpha, s] lands alone in some sample.
TEST(FindDisjointEdges, IndependentSamplesFormAUniqueCover) {
  const std::size_t n = 256;
  const double alpha = 2.0;
  const double s = 4.0;
  const std::uint64_t samples = disjoint_sample_count(n, alpha);
  const double p = disjoint_sample_probability(n, alpha, s);
  int covered_runs = 0;
  const int runs = 3;
  for (int run = 0; run < runs; ++run) {
    const Hypergraph h = gen_matching({n, {{2, 20}, {3, 20}, {4, 20}}, static_cast<std::uint64_t>(run)});
    std::vector<int> edge_of(n, -1);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
      for (Vertex v : h.edges()[i]) edge_of[v] = static_cast<int>(i);
    }
    std::mt19937_64 gen(1000 + run);
    std::geometric_distribution<std::size_t> gap(p);
    std::vector<char> alone(h.edge_count(), 0);
    std::vector<int> hits(h.edge_count(), 0);
    std::vector<int> touched;
    for (std::uint64_t i = 0; i < samples; ++i) {
      touched.clear();
      for (std::size_t v = gap(gen); v < n; v += gap(gen) + 1) {
        const int e = edge_of[v];
        if (e < 0) continue;
        if (hits[e]++ == 0) touched.push_back(e);
      }
      int complete = 0;
      int which = -1;
      for (int e : touched) {
        if (static_cast<std::size_t>(hits[e]) == h.edges()[e].size()) {
          ++complete;
          which = e;
        }
      }
      if (complete == 1) alone[which] = 1;
      for (int e : touched) hits[e] = 0;
    }
    covered_runs += std::all_of(alone.begin(), alone.end(), [](char c) { return c != 0; }) ? 1 : 0;
  }
  EXPECT_EQ(covered_runs, runs);
}

TEST(FindDisjointEdges, RecoversTheTargetBand) {
  const std::size_t n = 256;
  int exact = 0;
  const int runs = 100;
  for (int run = 0; run < runs; ++run) {
    const Hypergraph h = gen_matching({n, {{2, 20}, {3, 20}, {4, 20}}, static_cast<std::uint64_t>(run)});
    EdgeOracle oracle(h);
    MatchingConfig config;
    config.seed = static_cast<std::uint64_t>(run);
    config.on_emit = [&](const Edge& e) { ASSERT_TRUE(edge_set(h).count(e)) << e.to_string(); };
    const auto r = find_disjoint_edges(oracle, 4, 2, VertexSet::range(0, n), config);
    for (const auto& e : r.edges) {
      EXPECT_GE(e.size(), 2U);
      EXPECT_LE(e.size(), 4U);
    }
    exact += r.edges == h.edges() ? 1 : 0;
  }
  EXPECT_GE(exact, 95);
}

TEST(FindMatching, EmptyHiddenGraph) {
  for (auto sub : {Subroutine::kAdaptive, Subroutine::kParallel}) {
    EdgeOracle oracle(graph(32, {}));
    MatchingConfig config;
    config.subroutine = sub;
    const auto out = find_matching(oracle, config);
    EXPECT_EQ(out.learned.edge_count(), 0U);
    EXPECT_FALSE(out.truncated);
  }
}

TEST(FindMatching, NeedsThreeVertices) {
  EdgeOracle oracle(graph(2, {Edge{0, 1}}));
  EXPECT_THROW(find_matching(oracle, {}), InputError);
}

TEST(FindMatching, SmallInstancesBothSubroutines) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 3 + seed % 40;
    const Hypergraph h = gen_matching(dense_matching_spec(n, seed));
    for (auto sub : {Subroutine::kAdaptive, Subroutine::kParallel}) {
      EdgeOracle oracle(h);
      MatchingConfig config;
      config.subroutine = sub;
      config.seed = seed;
      config.on_emit = [&](const Edge& e) { EXPECT_TRUE(edge_set(h).count(e)) << e.to_string(); };
      const auto out = find_matching(oracle, config);
      EXPECT_EQ(out.learned, h) << "n=" << n << " " << subroutine_name(sub);
      EXPECT_EQ(out.budget_violations, 0U);
      EXPECT_EQ(out.ledger.total_queries, oracle.ledger().total_queries);
    }
  }
}

TEST(FindMatching, SeedDeterminism) {
  const Hypergraph h = gen_matching(dense_matching_spec(100, 4));
  auto run = [&] {
    EdgeOracle oracle(h);
    MatchingConfig config;
    config.seed = 12;
    return find_matching(oracle, config);
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.learned, b.learned);
  EXPECT_EQ(a.ledger.per_round, b.ledger.per_round);
}

TEST(FindMatching, RoundCapTruncates) {
  const Hypergraph h = gen_matching(dense_matching_spec(100, 4));
  EdgeOracle oracle(h);
  oracle.set_round_cap(1);
  const auto out = find_matching(oracle, {});
  EXPECT_TRUE(out.truncated);
  EXPECT_EQ(out.ledger.rounds(), 1U);
  for (const auto& e : out.learned.edges()) EXPECT_TRUE(edge_set(h).count(e));
}

TEST(FindMatchingRecovery, MixedSizesAt1024) {
  const MatchingSpec base{1024, {{2, 100}, {5, 30}, {40, 3}}, 0};
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MatchingSpec spec = base;
    spec.seed = seed;
    const Hypergraph h = gen_matching(spec);
    EdgeOracle oracle(h);
    MatchingConfig config;
    config.seed = seed + 500;
    config.on_emit = [&](const Edge& e) { EXPECT_TRUE(edge_set(h).count(e)) << e.to_string(); };
    exact += find_matching(oracle, config).learned == h ? 1 : 0;
  }
  EXPECT_GE(exact, 99);
}
