#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/hardness.hpp"
#include "hyperlearn/oracle.hpp"
#include "hyperlearn/random.hpp"

using namespace hyperlearn;

namespace {

std::size_t int_sqrt(std::size_t n) {
  std::size_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::set<Edge> edges_of(const Hypergraph& h) { return {h.edges().begin(), h.edges().end()}; }

}  // namespace

TEST(ThreePart, PartSizes) {
  for (std::size_t n : {4UL, 5UL, 10UL, 99UL, 100UL, 101UL, 2500UL, 10000UL}) {
    const auto inst = gen_three_part(n, n);
    const std::size_t root = int_sqrt(n);
    EXPECT_EQ(inst.hidden.size(), root) << n;
    EXPECT_EQ(inst.paired.size() % 2, 0U) << n;
    EXPECT_GE(inst.isolated.size(), 1U) << n;
    EXPECT_LE(inst.isolated.size(), 2U) << n;
    EXPECT_EQ(inst.paired.size() + inst.isolated.size() + inst.hidden.size(), n);
    EXPECT_TRUE(inst.graph.is_matching());
    EXPECT_EQ(inst.graph.edge_count(), inst.paired.size() / 2 + 1);
    EXPECT_TRUE(edges_of(inst.graph).count(Edge(inst.hidden)));
  }
  EXPECT_THROW(gen_three_part(3, 1), InputError);
}

TEST(ThreePart, LargeQueriesAlwaysHoldAnEdge) {
  const auto inst = gen_three_part(400, 9);
  EdgeOracle oracle(inst.graph);
  KSubsetDrawer drawer(400);
  SplitMix64 rng(2);
  for (int q = 0; q < 2000; ++q) {
    const auto s = drawer.draw(inst.positive_threshold() + 1, rng);
    EXPECT_TRUE(oracle.evaluate(s));
  }
}

TEST(ThreePart, ResplitKeepsThePairs) {
  const auto base = gen_three_part(500, 1);
  const auto other = resplit_three_part(base, 77);
  EXPECT_EQ(other.paired, base.paired);
  EXPECT_EQ(other.hidden.size(), base.hidden.size());
  EXPECT_NE(other.hidden, base.hidden);
  std::set<Vertex> before(base.hidden.begin(), base.hidden.end());
  before.insert(base.isolated.begin(), base.isolated.end());
  std::set<Vertex> after(other.hidden.begin(), other.hidden.end());
  after.insert(other.isolated.begin(), other.isolated.end());
  EXPECT_EQ(before, after);
}

TEST(Tower, MinimumSizes) {
  EXPECT_EQ(tower_min_n(2), 18U);
  // smallest n with 9 * ceil(3 ln^2 n) <= n, by scanning
  std::size_t n = 2;
  while (9 * static_cast<std::size_t>(std::ceil(3 * std::log(double(n)) * std::log(double(n)))) > n) ++n;
  EXPECT_EQ(tower_min_n(), n);
  EXPECT_THROW(gen_tower(17, 2, 1), InfeasibleError);
  EXPECT_THROW(gen_tower(n - 1, std::nullopt, 1), InfeasibleError);
  EXPECT_NO_THROW(gen_tower(n, std::nullopt, 1));
}

TEST(Tower, LevelInvariants) {
  for (auto [n, c] : {std::pair<std::size_t, std::optional<std::size_t>>{18, 2}, {200, 2}, {5000, 2},
                      {100000, 2}, {5000, std::nullopt}, {200000, std::nullopt}}) {
    const auto t = gen_tower(n, c, 3);
    const std::size_t cc = c.value_or(static_cast<std::size_t>(std::ceil(3 * std::pow(std::log(double(n)), 2))));
    EXPECT_EQ(t.c, cc);
    ASSERT_FALSE(t.levels.empty());
    std::size_t expected_size = 3;
    std::size_t covered = 0;
    std::set<Vertex> seen;
    const auto all = edges_of(t.graph);
    std::size_t level_edges = 0;
    for (const auto& level : t.levels) {
      EXPECT_EQ(level.edge_size, expected_size);
      EXPECT_EQ(level.vertices.size(), cc * expected_size * expected_size);
      EXPECT_EQ(level.edge_count, cc * expected_size);
      // every vertex of the level lies in exactly one edge of this level's size
      std::set<Vertex> level_vertices(level.vertices.begin(), level.vertices.end());
      std::size_t in_edges = 0;
      for (const auto& e : all) {
        if (e.size() != level.edge_size || !level_vertices.count(e.front())) continue;
        ++level_edges;
        for (Vertex v : e) {
          EXPECT_TRUE(level_vertices.count(v));
          ++in_edges;
        }
      }
      EXPECT_EQ(in_edges, level.vertices.size());
      seen.insert(level.vertices.begin(), level.vertices.end());
      covered += level.vertices.size();
      expected_size = cc * expected_size * expected_size;
    }
    // the next level would not fit
    EXPECT_GT(covered + cc * expected_size * expected_size, n);
    seen.insert(t.leftover.begin(), t.leftover.end());
    EXPECT_EQ(seen.size(), n);
    EXPECT_EQ(covered + t.leftover.size(), n);
    EXPECT_EQ(level_edges, t.graph.edge_count());
    EXPECT_TRUE(t.graph.is_matching());
  }
}

TEST(Tower, ResplitKeepsTheBaseLevel) {
  const auto base = gen_tower(100000, 2, 5);
  const auto other = resplit_tower(base, 6);
  EXPECT_EQ(other.levels.front().vertices, base.levels.front().vertices);
  ASSERT_GE(base.levels.size(), 2U);
  EXPECT_NE(other.levels[1].vertices, base.levels[1].vertices);
}

TEST(Tower, DepthLowerBound) {
  for (std::size_t n : {10000UL, 100000UL, 1000000UL}) {
    const auto t = gen_tower(n, std::nullopt, 1);
    EXPECT_LE(tower_depth_lower_bound(n), static_cast<double>(t.levels.size())) << n;
  }
}

TEST(Indistinguishability, ThreePartSmall) {
  ExperimentSetup setup;
  setup.family = HardFamily::kThreePart;
  setup.n = 2500;
  setup.queries = 20000;
  setup.seed = 4;
  const auto report = indistinguishability_experiment(setup);
  EXPECT_EQ(report.queries, 20000U);
  EXPECT_EQ(report.redraws, 20U);
  EXPECT_LE(report.disagreement, 1e-2);
  EXPECT_EQ(report.above_threshold_not_positive, 0U);
  std::uint64_t total = 0;
  for (const auto& b : report.buckets) total += b.queries;
  EXPECT_EQ(total, report.queries);
  EXPECT_EQ(indistinguishability_experiment(setup).disagreement, report.disagreement);
  EXPECT_NE(indistinguishability_json(report).find("\"disagreement\""), std::string::npos);
}

TEST(Indistinguishability, ExplicitQueriesSeeTheHiddenEdge) {
  // n = 16: four hidden vertices and two isolated ones share six places. The
  // whole remainder holds the hidden edge in every redraw; the remainder minus
  // one vertex holds it only when that vertex is isolated.
  const auto base = gen_three_part(16, 4);
  ASSERT_EQ(base.hidden.size() + base.isolated.size(), 6U);
  std::vector<Vertex> rest = base.hidden;
  rest.insert(rest.end(), base.isolated.begin(), base.isolated.end());
  ExperimentSetup setup;
  setup.n = 16;
  setup.seed = 4;
  setup.policy.kind = QueryPolicy::Kind::kExplicit;
  setup.policy.explicit_queries = {VertexSet(rest)};
  const auto agree = indistinguishability_experiment(setup);
  EXPECT_EQ(agree.queries, 1U);
  EXPECT_EQ(agree.disagreement, 0.0);
  rest.pop_back();
  setup.policy.explicit_queries = {VertexSet(rest)};
  EXPECT_GT(indistinguishability_experiment(setup).disagreement, 0.0);
}

TEST(Attack, OneRoundFailsWhereAdaptivitySucceeds) {
  int capped = 0;
  int uncapped = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = round_limited_attack("find-matching-adaptive", HardFamily::kThreePart, 400, 1, seed);
    EXPECT_TRUE(a.truncated);
    EXPECT_LE(a.rounds, 1U);
    capped += a.success ? 1 : 0;
    uncapped += round_limited_attack("find-matching-adaptive", HardFamily::kThreePart, 400, std::nullopt, seed).success;
  }
  EXPECT_EQ(capped, 0);
  EXPECT_EQ(uncapped, 10);
}
