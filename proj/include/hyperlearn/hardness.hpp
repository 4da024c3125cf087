#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlearn/hypergraph.hpp"

namespace hyperlearn {

// Perfectly 2-matched part, one edge of size floor(sqrt n) hidden among a few
// isolated vertices. One round of queries cannot tell where the big edge is.
struct ThreePartInstance {
  Hypergraph graph;
  std::vector<Vertex> paired;    // covered by edges of size 2
  std::vector<Vertex> isolated;  // one vertex, or two when parity requires
  std::vector<Vertex> hidden;    // the big edge

  // Any query larger than this holds a pair: pairs + |isolated| + |hidden|.
  std::size_t positive_threshold() const;
};

ThreePartInstance gen_three_part(std::size_t n, std::uint64_t seed);
// Keeps the paired part and its edges; redraws the isolated / hidden split.
ThreePartInstance resplit_three_part(const ThreePartInstance& base, std::uint64_t seed);

// Levels of geometrically exploding edge size: level i has c * d_i^2
// vertices matched into c * d_i edges of size d_i, with d_0 = 3 and
// d_(i+1) = c * d_i^2. Each level is hidden until the previous one is found.
struct TowerLevel {
  std::size_t edge_size = 0;
  std::vector<Vertex> vertices;
  std::size_t edge_count = 0;
};

struct TowerInstance {
  Hypergraph graph;
  std::size_t c = 0;
  std::vector<TowerLevel> levels;
  std::vector<Vertex> leftover;  // isolated vertices

  std::size_t top_level() const { return levels.size() - 1; }
};

std::size_t default_tower_constant(std::size_t n);  // ceil(3 ln^2 n)
// Smallest n whose first level fits, for the given or the default constant.
std::size_t tower_min_n(std::optional<std::size_t> c = std::nullopt);
// log2(ln n) - log2(ln(27 ln^2 n)): lower bound on the number of levels.
double tower_depth_lower_bound(std::size_t n);

// Throws InfeasibleError naming the minimum n when level 0 does not fit.
TowerInstance gen_tower(std::size_t n, std::optional<std::size_t> c, std::uint64_t seed);
// Keeps level 0 and its edges; redraws every higher level and the leftover.
TowerInstance resplit_tower(const TowerInstance& base, std::uint64_t seed);

enum class HardFamily { kThreePart, kTower };

const char* family_name(HardFamily family);

struct QueryPolicy {
  enum class Kind { kMixedSizes, kFixedSize, kExplicit };
  Kind kind = Kind::kMixedSizes;  // sizes uniform in [1, n], then a uniform subset
  std::size_t size = 0;
  std::vector<VertexSet> explicit_queries;
};

struct SizeBucket {
  std::size_t lo = 0;  // inclusive
  std::size_t hi = 0;  // inclusive
  std::uint64_t queries = 0;
  std::uint64_t disagreeing_pairs = 0;
  std::uint64_t all_positive = 0;
};

struct IndistinguishabilityReport {
  HardFamily family = HardFamily::kThreePart;
  std::size_t n = 0;
  std::size_t redraws = 0;
  std::uint64_t queries = 0;
  double disagreement = 0.0;  // over (query, pair of redraws)
  std::vector<SizeBucket> buckets;
  std::size_t positive_threshold = 0;            // three-part only; 0 otherwise
  std::uint64_t above_threshold_not_positive = 0;
};

struct ExperimentSetup {
  HardFamily family = HardFamily::kThreePart;
  std::size_t n = 0;
  std::uint64_t queries = 0;
  QueryPolicy policy;
  std::uint64_t seed = 0;
  std::optional<std::size_t> tower_c;
  std::size_t redraws = 20;
  std::size_t bucket_count = 10;
};

// Fixes the low part of a random instance, redraws the hidden part, replays
// the same random queries against every redraw and measures how often two
// redraws answer differently.
IndistinguishabilityReport indistinguishability_experiment(const ExperimentSetup& setup);
std::string indistinguishability_json(const IndistinguishabilityReport& report);

struct AttackResult {
  bool success = false;
  bool truncated = false;
  std::size_t rounds = 0;
  std::uint64_t queries = 0;
};

// Runs a registered learner against a random instance of the family with the
// oracle stopping after `rounds_cap` rounds.
AttackResult round_limited_attack(const std::string& learner, HardFamily family, std::size_t n,
                                  std::optional<std::size_t> rounds_cap, std::uint64_t seed,
                                  std::optional<std::size_t> tower_c = std::nullopt);

}  // namespace hyperlearn
