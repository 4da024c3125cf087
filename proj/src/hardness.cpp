#include "hyperlearn/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/oracle.hpp"
#include "hyperlearn/random.hpp"
#include "hyperlearn/registry.hpp"

namespace hyperlearn {

namespace {

constexpr std::uint64_t kPairedStream = 0x7031;
constexpr std::uint64_t kSplitStream = 0x7032;
constexpr std::uint64_t kTowerBaseStream = 0x7430;
constexpr std::uint64_t kTowerUpperStream = 0x7431;

std::vector<Vertex> shuffled(std::vector<Vertex> ids, std::uint64_t key) {
  SplitMix64 rng(key);
  std::shuffle(ids.begin(), ids.end(), rng);
  return ids;
}

void add_chunks(const std::vector<Vertex>& ids, std::size_t chunk, std::vector<Edge>& edges) {
  for (std::size_t i = 0; i + chunk <= ids.size(); i += chunk) {
    edges.emplace_back(std::vector<Vertex>(ids.begin() + static_cast<std::ptrdiff_t>(i),
                                           ids.begin() + static_cast<std::ptrdiff_t>(i + chunk)));
  }
}

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

ThreePartInstance split_three_part(std::size_t n, std::vector<Vertex> paired, std::vector<Vertex> remainder,
                                   std::uint64_t split_key) {
  ThreePartInstance out;
  const std::size_t hidden_size = isqrt(n);
  remainder = shuffled(std::move(remainder), split_key);
  out.paired = std::move(paired);
  out.hidden.assign(remainder.begin(), remainder.begin() + static_cast<std::ptrdiff_t>(hidden_size));
  out.isolated.assign(remainder.begin() + static_cast<std::ptrdiff_t>(hidden_size), remainder.end());
  std::vector<Edge> edges;
  add_chunks(out.paired, 2, edges);
  edges.emplace_back(out.hidden);
  out.graph = Hypergraph(n, std::move(edges));
  std::sort(out.hidden.begin(), out.hidden.end());
  std::sort(out.isolated.begin(), out.isolated.end());
  return out;
}

}  // namespace

std::size_t ThreePartInstance::positive_threshold() const {
  return paired.size() / 2 + isolated.size() + hidden.size();
}

ThreePartInstance gen_three_part(std::size_t n, std::uint64_t seed) {
  if (n < 4) throw InputError("the three-part family needs n >= 4");
  const std::size_t hidden_size = isqrt(n);
  std::size_t paired_size = n - hidden_size - 1;
  if (paired_size % 2 == 1) --paired_size;
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  all = shuffled(std::move(all), stream_key(seed, kPairedStream));
  std::vector<Vertex> paired(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(paired_size));
  std::vector<Vertex> remainder(all.begin() + static_cast<std::ptrdiff_t>(paired_size), all.end());
  return split_three_part(n, std::move(paired), std::move(remainder), stream_key(seed, kSplitStream));
}

ThreePartInstance resplit_three_part(const ThreePartInstance& base, std::uint64_t seed) {
  std::vector<Vertex> remainder = base.isolated;
  remainder.insert(remainder.end(), base.hidden.begin(), base.hidden.end());
  std::sort(remainder.begin(), remainder.end());
  return split_three_part(base.graph.n(), base.paired, std::move(remainder), stream_key(seed, kSplitStream));
}

std::size_t default_tower_constant(std::size_t n) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return static_cast<std::size_t>(std::ceil(3.0 * ln * ln));
}

std::size_t tower_min_n(std::optional<std::size_t> c) {
  if (c) return 9 * *c;
  std::size_t n = 2;
  while (9 * default_tower_constant(n) > n) ++n;
  return n;
}

double tower_depth_lower_bound(std::size_t n) {
  const double ln = std::log(static_cast<double>(n));
  return std::log2(ln) - std::log2(std::log(27.0 * ln * ln));
}

namespace {

TowerInstance place_upper_levels(TowerInstance out, std::vector<Vertex> upper, std::uint64_t key) {
  upper = shuffled(std::move(upper), key);
  std::vector<Edge> edges;
  add_chunks(out.levels.front().vertices, out.levels.front().edge_size, edges);
  std::size_t next = 0;
  for (std::size_t i = 1; i < out.levels.size(); ++i) {
    TowerLevel& level = out.levels[i];
    const std::size_t size = level.edge_size * level.edge_count;
    level.vertices.assign(upper.begin() + static_cast<std::ptrdiff_t>(next),
                          upper.begin() + static_cast<std::ptrdiff_t>(next + size));
    next += size;
    add_chunks(level.vertices, level.edge_size, edges);
  }
  out.leftover.assign(upper.begin() + static_cast<std::ptrdiff_t>(next), upper.end());
  std::sort(out.leftover.begin(), out.leftover.end());
  out.graph = Hypergraph(out.graph.n(), std::move(edges));
  return out;
}

}  // namespace

TowerInstance gen_tower(std::size_t n, std::optional<std::size_t> c_override, std::uint64_t seed) {
  const std::size_t c = c_override.value_or(default_tower_constant(n));
  if (c < 1) throw InputError("tower constant must be at least 1");
  if (9 * c > n) {
    throw InfeasibleError("n = " + std::to_string(n) + " cannot hold the first level; the minimum is " +
                          std::to_string(tower_min_n(c_override)));
  }
  TowerInstance out;
  out.c = c;
  out.graph = Hypergraph(n);
  std::size_t used = 0;
  double edge_size = 3.0;
  while (true) {
    const double level_size = static_cast<double>(c) * edge_size * edge_size;
    if (static_cast<double>(used) + level_size > static_cast<double>(n)) break;
    TowerLevel level;
    level.edge_size = static_cast<std::size_t>(edge_size);
    level.edge_count = c * level.edge_size;
    out.levels.push_back(std::move(level));
    used += static_cast<std::size_t>(level_size);
    edge_size = level_size;
  }
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  all = shuffled(std::move(all), stream_key(seed, kTowerBaseStream));
  const std::size_t base_size = out.levels.front().edge_size * out.levels.front().edge_count;
  out.levels.front().vertices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(base_size));
  std::vector<Vertex> upper(all.begin() + static_cast<std::ptrdiff_t>(base_size), all.end());
  std::sort(upper.begin(), upper.end());
  return place_upper_levels(std::move(out), std::move(upper), stream_key(seed, kTowerUpperStream));
}

TowerInstance resplit_tower(const TowerInstance& base, std::uint64_t seed) {
  TowerInstance out = base;
  std::vector<Vertex> upper = base.leftover;
  for (std::size_t i = 1; i < base.levels.size(); ++i) {
    upper.insert(upper.end(), base.levels[i].vertices.begin(), base.levels[i].vertices.end());
  }
  std::sort(upper.begin(), upper.end());
  return place_upper_levels(std::move(out), std::move(upper), stream_key(seed, kTowerUpperStream));
}

const char* family_name(HardFamily family) { return family == HardFamily::kThreePart ? "three-part" : "tower"; }

namespace {

struct FamilyDraws {
  std::vector<Edge> fixed;
  std::vector<std::vector<Edge>> redrawn;
  std::size_t positive_threshold = 0;
};

std::vector<Edge> edges_within(const Hypergraph& g, const std::vector<Vertex>& part) {
  std::vector<bool> inside(g.n(), false);
  for (Vertex v : part) inside[v] = true;
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (inside[e.front()]) out.push_back(e);
  }
  return out;
}

FamilyDraws draw_family(const ExperimentSetup& setup) {
  FamilyDraws draws;
  if (setup.family == HardFamily::kThreePart) {
    const auto base = gen_three_part(setup.n, setup.seed);
    draws.fixed = edges_within(base.graph, base.paired);
    draws.positive_threshold = base.positive_threshold();
    for (std::size_t r = 0; r < setup.redraws; ++r) {
      const auto redraw = resplit_three_part(base, stream_key(setup.seed, 0x7264, r));
      draws.redrawn.push_back({Edge(redraw.hidden)});
    }
  } else {
    const auto base = gen_tower(setup.n, setup.tower_c, setup.seed);
    draws.fixed = edges_within(base.graph, base.levels.front().vertices);
    for (std::size_t r = 0; r < setup.redraws; ++r) {
      const auto redraw = resplit_tower(base, stream_key(setup.seed, 0x7264, r));
      std::vector<Vertex> upper;
      for (std::size_t i = 1; i < redraw.levels.size(); ++i) {
        upper.insert(upper.end(), redraw.levels[i].vertices.begin(), redraw.levels[i].vertices.end());
      }
      draws.redrawn.push_back(edges_within(redraw.graph, upper));
    }
  }
  return draws;
}

}  // namespace

IndistinguishabilityReport indistinguishability_experiment(const ExperimentSetup& setup) {
  if (setup.redraws < 2) throw InputError("need at least two redraws");
  if (setup.bucket_count < 1) throw InputError("need at least one size bucket");
  const std::size_t n = setup.n;
  const auto draws = draw_family(setup);
  const EdgeOracle fixed{Hypergraph(n, draws.fixed)};
  std::vector<EdgeOracle> redrawn;
  redrawn.reserve(draws.redrawn.size());
  for (const auto& edges : draws.redrawn) redrawn.emplace_back(Hypergraph(n, edges));

  IndistinguishabilityReport report;
  report.family = setup.family;
  report.n = n;
  report.redraws = setup.redraws;
  report.positive_threshold = draws.positive_threshold;
  for (std::size_t b = 0; b < setup.bucket_count; ++b) {
    SizeBucket bucket;
    bucket.lo = b * (n + 1) / setup.bucket_count;
    bucket.hi = (b + 1) * (n + 1) / setup.bucket_count - 1;
    report.buckets.push_back(bucket);
  }

  const std::uint64_t total = setup.policy.kind == QueryPolicy::Kind::kExplicit
                                  ? setup.policy.explicit_queries.size()
                                  : setup.queries;
  SplitMix64 rng(stream_key(setup.seed, 0x7179));
  KSubsetDrawer drawer(n);
  std::uniform_int_distribution<std::size_t> size_pick(1, n);
  VertexMask mask(n);
  std::vector<Vertex> ids;
  const std::uint64_t k = setup.redraws;
  std::uint64_t disagreeing = 0;
  for (std::uint64_t q = 0; q < total; ++q) {
    ids.clear();
    switch (setup.policy.kind) {
      case QueryPolicy::Kind::kExplicit: {
        const auto& s = setup.policy.explicit_queries[q];
        ids.assign(s.begin(), s.end());
        break;
      }
      case QueryPolicy::Kind::kFixedSize: {
        auto view = drawer.draw(std::min(setup.policy.size, n), rng);
        ids.assign(view.begin(), view.end());
        break;
      }
      case QueryPolicy::Kind::kMixedSizes: {
        auto view = drawer.draw(size_pick(rng), rng);
        ids.assign(view.begin(), view.end());
        break;
      }
    }
    mask.clear();
    for (Vertex v : ids) mask.set(v);
    std::uint64_t positive = k;
    if (!fixed.evaluate(mask)) {
      positive = 0;
      for (const auto& oracle : redrawn) positive += oracle.evaluate(mask) ? 1 : 0;
    }
    const std::uint64_t pairs = positive * (k - positive);
    disagreeing += pairs;
    SizeBucket& bucket = report.buckets[std::min(ids.size() * setup.bucket_count / (n + 1), setup.bucket_count - 1)];
    ++bucket.queries;
    bucket.disagreeing_pairs += pairs;
    if (positive == k) ++bucket.all_positive;
    if (report.positive_threshold > 0 && ids.size() > report.positive_threshold && positive != k) {
      ++report.above_threshold_not_positive;
    }
  }
  report.queries = total;
  const double pair_count = static_cast<double>(k * (k - 1) / 2) * static_cast<double>(total);
  report.disagreement = total == 0 ? 0.0 : static_cast<double>(disagreeing) / pair_count;
  return report;
}

std::string indistinguishability_json(const IndistinguishabilityReport& report) {
  nlohmann::json buckets = nlohmann::json::array();
  for (const auto& b : report.buckets) {
    buckets.push_back({{"sizes", {b.lo, b.hi}},
                       {"queries", b.queries},
                       {"disagreeing_pairs", b.disagreeing_pairs},
                       {"all_positive", b.all_positive}});
  }
  nlohmann::json doc = {{"family", family_name(report.family)},
                        {"n", report.n},
                        {"redraws", report.redraws},
                        {"queries", report.queries},
                        {"disagreement", report.disagreement},
                        {"buckets", buckets}};
  if (report.positive_threshold > 0) {
    doc["positive_threshold"] = report.positive_threshold;
    doc["above_threshold_not_positive"] = report.above_threshold_not_positive;
  }
  return doc.dump(2);
}

AttackResult round_limited_attack(const std::string& learner, HardFamily family, std::size_t n,
                                  std::optional<std::size_t> rounds_cap, std::uint64_t seed,
                                  std::optional<std::size_t> tower_c) {
  const Hypergraph hidden = family == HardFamily::kThreePart ? gen_three_part(n, stream_key(seed, 1)).graph
                                                             : gen_tower(n, tower_c, stream_key(seed, 1)).graph;
  EdgeOracle oracle(hidden);
  oracle.set_round_cap(rounds_cap);
  const auto outcome = run_registered_learner(learner, oracle, stream_key(seed, 2));
  AttackResult result;
  result.success = outcome.learned == hidden;
  result.truncated = outcome.truncated;
  result.rounds = outcome.ledger.rounds();
  result.queries = outcome.ledger.total_queries;
  return result;
}

}  // namespace hyperlearn
