#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperlearn/hypergraph.hpp"
#include "hyperlearn/lowdeg_learner.hpp"
#include "hyperlearn/matching_learner.hpp"

namespace hyperlearn {

struct RunRow {
  std::string algo;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string params;  // alpha or learner parameters, never containing commas
  std::uint64_t queries = 0;
  std::size_t rounds = 0;
  bool success = false;
  double wall_ms = 0.0;
};

std::string csv_header();
std::string csv_row(const RunRow& row);
// Appends rows, writing the header first when the file is new or empty.
void append_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows);

struct LowDegreeParams {
  std::size_t max_degree = 2;
  std::size_t max_size = 2;
  double size_ratio = 1.0;
  DeletionSchedule schedule = DeletionSchedule::kLazy;
  std::optional<std::size_t> edge_count;  // default_low_degree_edge_count when empty
};

std::vector<std::string> sweep_algorithms();

struct SweepSpec {
  std::string algo = "find-matching-adaptive";
  std::vector<std::size_t> n_values;
  std::size_t seeds = 1;
  std::uint64_t base_seed = 1;
  std::optional<double> alpha;
  LowDegreeParams lowdeg;
  std::optional<Hypergraph> instance;  // learn this instead of a generated one
  unsigned jobs = 1;
};

// The hidden hypergraph a sweep uses for (algo, n, seed).
Hypergraph sweep_instance(const SweepSpec& spec, std::size_t n, std::uint64_t seed);
RunRow run_one(const SweepSpec& spec, std::size_t n, std::uint64_t seed);
// Rows ordered by n, then seed, whatever the number of jobs.
std::vector<RunRow> run_sweep(const SweepSpec& spec);

}  // namespace hyperlearn
