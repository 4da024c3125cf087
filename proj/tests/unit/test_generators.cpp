#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/generators.hpp"

using namespace hyperlearn;

namespace {

std::map<std::size_t, std::size_t> size_histogram(const Hypergraph& h) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& e : h.edges()) ++out[e.size()];
  return out;
}

}  // namespace

TEST(GenMatching, HonoursTheRequestedSizes) {
  const MatchingSpec spec{1024, {{2, 100}, {5, 30}, {40, 3}}, 17};
  const Hypergraph h = gen_matching(spec);
  EXPECT_TRUE(h.is_matching());
  EXPECT_EQ(h.n(), 1024U);
  EXPECT_EQ(size_histogram(h), spec.size_counts);
}

TEST(GenMatching, SeedDeterminism) {
  const MatchingSpec a{200, {{3, 20}, {7, 4}}, 5};
  MatchingSpec b = a;
  b.seed = 6;
  EXPECT_EQ(gen_matching(a), gen_matching(a));
  EXPECT_NE(gen_matching(a), gen_matching(b));
}

TEST(GenMatching, RejectsOverfullRequests) {
  EXPECT_THROW(gen_matching({10, {{3, 4}}, 1}), InputError);
  EXPECT_THROW(gen_matching({10, {{0, 1}}, 1}), InputError);
}

TEST(DenseMatching, CoversAllButOneVertex) {
  for (std::size_t n : {16UL, 100UL, 256UL, 1000UL, 4096UL}) {
    const Hypergraph h = gen_matching(dense_matching_spec(n, 3));
    ASSERT_TRUE(h.is_matching());
    std::size_t covered = 0;
    for (const auto& e : h.edges()) covered += e.size();
    EXPECT_GE(covered + 1, n) << n;
    const auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    EXPECT_GE(size_histogram(h)[root], 1U) << n;
  }
}

TEST(GenLowDegree, RespectsEveryBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto [delta, d, rho] : {std::tuple{2UL, 2UL, 1.0}, {2UL, 3UL, 1.0}, {3UL, 4UL, 2.0}, {4UL, 8UL, 2.0}}) {
      const std::size_t n = 120;
      const std::size_t m = default_low_degree_edge_count(n, delta, d);
      const auto inst = gen_low_degree({n, delta, d, rho, m, seed});
      const Hypergraph& h = inst.graph;
      EXPECT_EQ(h.edge_count(), m);
      EXPECT_LE(h.max_degree(), delta);
      EXPECT_LE(h.max_edge_size(), d);
      EXPECT_GE(static_cast<double>(h.min_edge_size()), std::ceil(static_cast<double>(d) / rho));
      EXPECT_LE(h.size_ratio(), rho + 1e-12);
      EXPECT_TRUE(h.is_antichain());
      EXPECT_EQ(inst.degree, h.max_degree());
    }
  }
}

TEST(GenLowDegree, DefaultEdgeCountIsHalfTheCapacity) {
  EXPECT_EQ(default_low_degree_edge_count(100, 2, 2), 50U);
  EXPECT_EQ(default_low_degree_edge_count(150, 2, 3), 50U);
}

TEST(GenLowDegree, RefusesImpossibleRequests) {
  EXPECT_THROW(gen_low_degree({10, 1, 2, 1.0, 6, 1}), InfeasibleError);
  EXPECT_THROW(gen_low_degree({10, 2, 3, 2.0, 1, 1}), InputError);
}

TEST(GenAntichain, IsAnAntichain) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Hypergraph h = gen_antichain(10, 6, 4, seed);
    EXPECT_TRUE(h.is_antichain());
    EXPECT_LE(h.max_edge_size(), 4U);
  }
}
