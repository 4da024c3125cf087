#include "hyperlearn/matching_learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/random.hpp"

namespace hyperlearn {

namespace {

constexpr double kBudgetSlack = 1e-9;

struct SearchCost {
  std::uint64_t queries = 0;
  std::size_t rounds = 0;

  void settle(Batch& batch) {
    batch.close();
    if (batch.size() > 0) {
      queries += batch.size();
      ++rounds;
    }
  }
};

std::optional<Edge> parallel_search(const EdgeOracle& oracle, RoundSink& sink, std::span<const Vertex> s,
                                    const VertexMask& mask, bool gate_known, SearchCost& cost) {
  if (!gate_known) {
    Batch gate(oracle, sink);
    const bool positive = gate.ask(mask);
    cost.settle(gate);
    if (!positive) return std::nullopt;
  }
  std::vector<bool> answers;
  answers.reserve(s.size());
  Batch deletions(oracle, sink);
  deletions.ask_deletions(mask, s, answers);
  cost.settle(deletions);
  std::vector<Vertex> essential;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!answers[i]) essential.push_back(s[i]);
  }
  if (essential.empty()) return std::nullopt;
  return Edge::from_sorted(std::move(essential));
}

struct Segment {
  std::uint32_t lo;
  std::uint32_t hi;
  std::vector<Vertex> rest;
};

void report_frontier(const FrontierObserver& observer, std::span<const Vertex> s, const std::vector<Segment>& frontier,
                     const std::vector<Vertex>& found) {
  std::vector<FrontierEntry> entries;
  entries.reserve(frontier.size());
  for (const Segment& seg : frontier) {
    entries.push_back({VertexSet(std::vector<Vertex>(s.begin() + seg.lo, s.begin() + seg.hi)), VertexSet(seg.rest)});
  }
  observer(entries, VertexSet(found));
}

// `s` must be sorted. With `gate_known` the caller already knows Q(s) = 1.
std::optional<Edge> adaptive_search(const EdgeOracle& oracle, RoundSink& sink, std::span<const Vertex> s,
                                    double size_limit, bool gate_known, const FrontierObserver& observer,
                                    SearchCost& cost) {
  if (s.empty()) {
    if (gate_known) return std::nullopt;
    Batch gate(oracle, sink);
    gate.ask(s);
    cost.settle(gate);
    return std::nullopt;
  }

  std::vector<Segment> frontier{{0, static_cast<std::uint32_t>(s.size()), {}}};
  std::vector<Segment> next;
  std::vector<Vertex> found;
  std::vector<Vertex> left;
  std::vector<Vertex> right;
  bool first = true;
  while (!frontier.empty()) {
    if (static_cast<double>(frontier.size()) > size_limit) return std::nullopt;
    if (observer) report_frontier(observer, s, frontier, found);
    Batch batch(oracle, sink);
    const bool gate = first && !gate_known ? batch.ask(s) : true;
    next.clear();
    bool conflict = false;
    for (Segment& seg : frontier) {
      if (seg.hi - seg.lo == 1) {
        found.push_back(s[seg.lo]);
        continue;
      }
      const std::uint32_t mid = seg.lo + (seg.hi - seg.lo + 1) / 2;
      left.assign(s.begin() + seg.lo, s.begin() + mid);
      left.insert(left.end(), seg.rest.begin(), seg.rest.end());
      right.assign(s.begin() + mid, s.begin() + seg.hi);
      right.insert(right.end(), seg.rest.begin(), seg.rest.end());
      const bool in_left = batch.ask(left);
      const bool in_right = batch.ask(right);
      if (in_left && in_right) {
        conflict = true;
        break;
      }
      if (in_left) {
        next.push_back({seg.lo, mid, std::move(seg.rest)});
      } else if (in_right) {
        next.push_back({mid, seg.hi, std::move(seg.rest)});
      } else {
        std::vector<Vertex> with_right(s.begin() + mid, s.begin() + seg.hi);
        with_right.insert(with_right.end(), seg.rest.begin(), seg.rest.end());
        next.push_back({seg.lo, mid, std::move(with_right)});
        std::vector<Vertex> with_left(s.begin() + seg.lo, s.begin() + mid);
        with_left.insert(with_left.end(), seg.rest.begin(), seg.rest.end());
        next.push_back({mid, seg.hi, std::move(with_left)});
      }
    }
    cost.settle(batch);
    if (!gate || conflict) return std::nullopt;
    first = false;
    frontier.swap(next);
  }

  if (static_cast<double>(found.size()) > size_limit) return std::nullopt;
  std::sort(found.begin(), found.end());
  Batch verify(oracle, sink);
  bool ok = verify.ask(found);
  // Q of the empty set is 0 for every hypergraph, so a single vertex needs no deletion check.
  for (std::size_t i = 0; ok && found.size() > 1 && i < found.size(); ++i) {
    left.assign(found.begin(), found.end());
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(i));
    if (verify.ask(left)) ok = false;
  }
  cost.settle(verify);
  if (!ok) return std::nullopt;
  return Edge::from_sorted(std::move(found));
}

bool within_parallel_budget(std::size_t set_size, const SearchCost& cost) {
  return cost.queries <= parallel_query_budget(set_size) && cost.rounds <= parallel_round_budget();
}

bool within_adaptive_budget(std::size_t set_size, double size_limit, const SearchCost& cost) {
  return static_cast<double>(cost.queries) <= adaptive_query_budget(set_size, size_limit) + kBudgetSlack &&
         static_cast<double>(cost.rounds) <= adaptive_round_budget(set_size) + kBudgetSlack;
}

std::string over_budget_message(const char* what, std::size_t set_size, const SearchCost& cost) {
  return std::string(what) + " on |S| = " + std::to_string(set_size) + " used " + std::to_string(cost.queries) +
         " queries in " + std::to_string(cost.rounds) + " rounds";
}

EdgeSearchResult finish(std::optional<Edge> edge, const SearchCost& cost, bool within, bool strict, const char* what,
                        std::size_t set_size) {
  if (!within && strict) throw BudgetViolation(over_budget_message(what, set_size, cost));
  return {std::move(edge), cost.queries, cost.rounds, !within};
}

}  // namespace

const char* subroutine_name(Subroutine sub) { return sub == Subroutine::kParallel ? "parallel" : "adaptive"; }

std::uint64_t parallel_query_budget(std::size_t set_size) { return set_size + 1; }

std::size_t parallel_round_budget() { return 2; }

double adaptive_query_budget(std::size_t set_size, double size_limit) {
  const double levels = set_size <= 1 ? 0.0 : std::ceil(std::log2(static_cast<double>(set_size)));
  return 2.0 * size_limit * levels + size_limit + 1.0;
}

double adaptive_round_budget(std::size_t set_size) {
  return set_size <= 1 ? 2.0 : std::log2(static_cast<double>(set_size)) + 2.0;
}

EdgeSearchResult find_edge_parallel(EdgeOracle& oracle, const VertexSet& s, const SearchOptions& options) {
  for (Vertex v : s) {
    if (v >= oracle.n()) throw InputError("vertex " + std::to_string(v) + " is outside the oracle's universe");
  }
  VertexMask mask(oracle.n(), s.span());
  SearchCost cost;
  auto edge = parallel_search(oracle, oracle, s.span(), mask, false, cost);
  return finish(std::move(edge), cost, within_parallel_budget(s.size(), cost), options.strict_budget,
                "parallel edge search", s.size());
}

EdgeSearchResult find_edge_adaptive(EdgeOracle& oracle, const VertexSet& s, double size_limit,
                                    const SearchOptions& options) {
  if (!(size_limit >= 1.0)) throw InputError("size limit must be at least 1");
  SearchCost cost;
  auto edge = adaptive_search(oracle, oracle, s.span(), size_limit, false, options.observer, cost);
  return finish(std::move(edge), cost, within_adaptive_budget(s.size(), size_limit, cost), options.strict_budget,
                "adaptive edge search", s.size());
}

std::vector<Vertex> find_singletons(EdgeOracle& oracle, const VertexSet& pool) {
  std::vector<Vertex> out;
  Batch batch = oracle.open_batch();
  for (Vertex v : pool) {
    const Vertex one[1] = {v};
    if (batch.ask(std::span<const Vertex>(one))) out.push_back(v);
  }
  return out;
}

double default_alpha(Subroutine sub, std::size_t n) {
  if (sub == Subroutine::kParallel) return 2.0;
  if (n < 3) throw InputError("the adaptive growth factor needs n >= 3");
  return 1.0 / (1.0 - 1.0 / (2.0 * std::log(static_cast<double>(n))));
}

std::uint64_t disjoint_sample_count(std::size_t n, double alpha) {
  const double ln = std::log(static_cast<double>(n));
  const double count = std::ceil(std::pow(static_cast<double>(n), alpha) * ln * ln);
  if (count >= static_cast<double>(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(count);
}

double disjoint_sample_probability(std::size_t n, double alpha, double size_limit) {
  return std::pow(static_cast<double>(n), -alpha / size_limit);
}

namespace {

DisjointEdgesResult run_disjoint_phase(EdgeOracle& oracle, double size_limit, double alpha,
                                       std::span<const Vertex> pool, const MatchingConfig& config,
                                       std::uint64_t phase) {
  const std::size_t n = oracle.n();
  DisjointEdgesResult result;
  result.samples = disjoint_sample_count(n, alpha);
  if (result.samples > std::numeric_limits<std::uint32_t>::max()) {
    throw BudgetRefused("too many samples for one phase", static_cast<double>(result.samples),
                        static_cast<double>(std::numeric_limits<std::uint32_t>::max()));
  }
  SubsetSampler sampler(n, pool, disjoint_sample_probability(n, alpha, size_limit));
  VertexMask mask(n);

  std::vector<std::uint32_t> positives;
  {
    Batch gates = oracle.open_batch();
    for (std::uint64_t i = 0; i < result.samples; ++i) {
      SplitMix64 rng(stream_key(config.seed, phase, i));
      sampler.draw(rng, mask);
      if (gates.ask(mask)) positives.push_back(static_cast<std::uint32_t>(i));
    }
  }
  result.positives = positives.size();

  ParallelSection section(oracle);
  std::vector<Vertex> members;
  for (std::uint32_t i : positives) {
    SplitMix64 rng(stream_key(config.seed, phase, i));
    sampler.draw(rng, mask);
    members.clear();
    mask.append_to(members);
    Lane lane = section.begin_lane();
    SearchCost cost;
    std::optional<Edge> edge;
    bool within = true;
    try {
      if (config.subroutine == Subroutine::kParallel) {
        edge = parallel_search(oracle, lane, members, mask, true, cost);
        within = within_parallel_budget(members.size(), cost);
      } else {
        edge = adaptive_search(oracle, lane, members, size_limit, true, nullptr, cost);
        within = within_adaptive_budget(members.size(), size_limit, cost);
      }
    } catch (const RoundLimitReached&) {
      result.truncated = true;
      section.end_lane(lane);
      continue;
    }
    section.end_lane(lane);
    if (!within) {
      if (config.strict_budgets) {
        throw BudgetViolation(over_budget_message(subroutine_name(config.subroutine), members.size(), cost));
      }
      ++result.budget_violations;
    }
    if (edge) {
      if (config.on_emit) config.on_emit(*edge);
      result.edges.push_back(std::move(*edge));
    }
  }
  section.commit();
  std::sort(result.edges.begin(), result.edges.end());
  result.edges.erase(std::unique(result.edges.begin(), result.edges.end()), result.edges.end());
  return result;
}

}  // namespace

DisjointEdgesResult find_disjoint_edges(EdgeOracle& oracle, double size_limit, double alpha, const VertexSet& pool,
                                        const MatchingConfig& config, std::uint64_t phase) {
  if (!(alpha > 1.0)) throw InputError("growth factor must exceed 1");
  if (size_limit / alpha < 2.0) throw InputError("size limit / growth factor must be at least 2");
  for (Vertex v : pool) {
    if (v >= oracle.n()) throw InputError("pool vertex " + std::to_string(v) + " is outside the oracle's universe");
  }
  return run_disjoint_phase(oracle, size_limit, alpha, pool.span(), config, phase);
}

LearnOutcome find_matching(EdgeOracle& oracle, const MatchingConfig& config) {
  const std::size_t n = oracle.n();
  if (n < 3) throw InputError("learning a matching needs n >= 3");
  const double alpha = config.alpha.value_or(default_alpha(config.subroutine, n));
  if (!(alpha > 1.0)) throw InputError("growth factor must exceed 1");

  const auto start = std::chrono::steady_clock::now();
  LearnOutcome outcome;
  std::vector<Edge> learned;
  std::vector<bool> covered(n, false);
  std::vector<Vertex> pool;
  auto refresh_pool = [&] {
    pool.clear();
    for (std::size_t v = 0; v < n; ++v) {
      if (!covered[v]) pool.push_back(static_cast<Vertex>(v));
    }
  };

  try {
    for (Vertex v : find_singletons(oracle, VertexSet::range(0, static_cast<Vertex>(n)))) {
      Edge e{v};
      if (config.on_emit) config.on_emit(e);
      learned.push_back(std::move(e));
      covered[v] = true;
    }
    refresh_pool();

    std::uint64_t phase = 0;
    auto run_phase = [&](double size_limit) {
      if (pool.empty()) return;
      auto found = run_disjoint_phase(oracle, size_limit, alpha, pool, config, ++phase);
      outcome.budget_violations += found.budget_violations;
      for (Edge& e : found.edges) {
        for (Vertex v : e) covered[v] = true;
        learned.push_back(std::move(e));
      }
      refresh_pool();
      if (found.truncated) throw RoundLimitReached(oracle.round_cap().value_or(0));
    };
    double size_limit = 2.0 * alpha;
    while (size_limit < static_cast<double>(n)) {
      run_phase(size_limit);
      size_limit = std::floor(alpha * size_limit) + 1.0;
    }
    run_phase(static_cast<double>(n));
  } catch (const RoundLimitReached&) {
    outcome.truncated = true;
  }

  std::sort(learned.begin(), learned.end());
  learned.erase(std::unique(learned.begin(), learned.end()), learned.end());
  outcome.learned = Hypergraph(n, std::move(learned));
  oracle.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  outcome.ledger = oracle.ledger();
  return outcome;
}

}  // namespace hyperlearn
