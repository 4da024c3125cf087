#include "hyperlearn/lowdeg_learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/random.hpp"

namespace hyperlearn {

namespace {

void record_candidate(std::span<const Vertex> members, const std::vector<bool>& deletion_answers,
                      std::set<Edge>& candidates) {
  std::vector<Vertex> essential;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!deletion_answers[i]) essential.push_back(members[i]);
  }
  if (!essential.empty()) candidates.insert(Edge::from_sorted(std::move(essential)));
}

std::vector<Edge> drop_strict_subsets(const std::set<Edge>& candidates) {
  std::vector<Edge> all(candidates.begin(), candidates.end());
  std::vector<Edge> kept;
  for (const Edge& e : all) {
    const bool dominated =
        std::any_of(all.begin(), all.end(), [&](const Edge& other) { return e.is_strict_subset_of(other); });
    if (!dominated) kept.push_back(e);
  }
  return kept;
}

}  // namespace

LowDegreePlan plan_budget(std::size_t n, std::size_t max_degree, std::size_t max_size, double size_ratio) {
  if (n < 2) throw InputError("n must be at least 2");
  if (max_degree < 1 || max_size < 1 || size_ratio < 1.0) throw InputError("degree, size and ratio must be at least 1");
  const double two_n = 2.0 * static_cast<double>(n);
  const double ln = std::log(static_cast<double>(n));
  const double raw = std::ceil(std::exp(size_ratio * static_cast<double>(max_degree) * std::log(two_n)) * ln * ln);
  LowDegreePlan plan;
  const double ceiling = static_cast<double>(std::numeric_limits<std::uint64_t>::max());
  plan.samples = raw >= ceiling ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(raw);
  plan.probability = std::pow(two_n, -size_ratio / static_cast<double>(max_size));
  plan.worst_case_queries = static_cast<double>(n + 1) * raw;
  return plan;
}

double planned_demand(const LowDegreePlan& plan, std::size_t n, DeletionSchedule schedule) {
  const auto samples = static_cast<double>(plan.samples);
  if (schedule == DeletionSchedule::kLazy) return samples;
  return samples * (1.0 + plan.probability * static_cast<double>(n));
}

LearnOutcome find_low_degree_edges(EdgeOracle& oracle, const LowDegreeConfig& config) {
  const std::size_t n = oracle.n();
  auto plan = plan_budget(n, config.max_degree, config.max_size, config.size_ratio);
  if (config.sample_override) plan.samples = *config.sample_override;
  const double demand = planned_demand(plan, n, config.schedule);
  if (demand > config.query_cap) {
    throw BudgetRefused("planned demand of " + std::to_string(demand) + " queries exceeds the cap of " +
                            std::to_string(config.query_cap),
                        demand, config.query_cap);
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<Vertex> everyone(n);
  for (std::size_t v = 0; v < n; ++v) everyone[v] = static_cast<Vertex>(v);
  SubsetSampler sampler(n, everyone, plan.probability);
  VertexMask mask(n);
  std::vector<Vertex> members;
  std::vector<bool> answers;
  std::set<Edge> candidates;
  LearnOutcome outcome;

  try {
    if (config.schedule == DeletionSchedule::kEager) {
      Batch batch = oracle.open_batch();
      for (std::uint64_t i = 0; i < plan.samples; ++i) {
        SplitMix64 rng(stream_key(config.seed, 0, i));
        sampler.draw(rng, mask);
        members.clear();
        mask.append_to(members);
        answers.clear();
        const bool positive = batch.ask(mask);
        batch.ask_deletions(mask, members, answers);
        if (positive) record_candidate(members, answers, candidates);
      }
    } else {
      std::vector<std::uint64_t> positives;
      {
        Batch gates = oracle.open_batch();
        for (std::uint64_t i = 0; i < plan.samples; ++i) {
          SplitMix64 rng(stream_key(config.seed, 0, i));
          sampler.draw(rng, mask);
          if (gates.ask(mask)) positives.push_back(i);
        }
      }
      Batch deletions = oracle.open_batch();
      for (std::uint64_t i : positives) {
        SplitMix64 rng(stream_key(config.seed, 0, i));
        sampler.draw(rng, mask);
        members.clear();
        mask.append_to(members);
        answers.clear();
        deletions.ask_deletions(mask, members, answers);
        record_candidate(members, answers, candidates);
      }
    }
  } catch (const RoundLimitReached&) {
    outcome.truncated = true;
  }

  outcome.learned = Hypergraph(n, drop_strict_subsets(candidates));
  oracle.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  outcome.ledger = oracle.ledger();
  return outcome;
}

}  // namespace hyperlearn
