#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hyperlearn/oracle.hpp"

namespace hyperlearn {

enum class DeletionSchedule {
  kEager,  // gates and all deletions in a single round
  kLazy,   // deletions only for samples whose gate answered 1, in a second round
};

struct LowDegreeConfig {
  std::size_t max_degree = 2;
  std::size_t max_size = 2;
  double size_ratio = 1.0;
  DeletionSchedule schedule = DeletionSchedule::kLazy;
  double query_cap = 1e8;
  std::optional<std::uint64_t> sample_override;  // replaces the planned sample count
  std::uint64_t seed = 0;
};

struct LowDegreePlan {
  std::uint64_t samples = 0;       // ceil((2n)^(rho * Delta) ln^2 n), saturating
  double probability = 0.0;        // (2n)^(-rho / d)
  double worst_case_queries = 0.0; // (n + 1) * samples
};

LowDegreePlan plan_budget(std::size_t n, std::size_t max_degree, std::size_t max_size, double size_ratio);

// Queries the learner is committed to before it sees any answer: every gate,
// plus the expected deletions when they are asked eagerly.
double planned_demand(const LowDegreePlan& plan, std::size_t n, DeletionSchedule schedule);

// Learns a hidden antichain of bounded degree and edge size. Throws
// BudgetRefused when the planned demand exceeds the query cap.
LearnOutcome find_low_degree_edges(EdgeOracle& oracle, const LowDegreeConfig& config);

}  // namespace hyperlearn
