#include "hyperlearn/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/generators.hpp"
#include "hyperlearn/random.hpp"
#include "hyperlearn/reference.hpp"

namespace hyperlearn {

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

const char* schedule_name(DeletionSchedule s) { return s == DeletionSchedule::kEager ? "eager" : "lazy"; }

}  // namespace

std::string csv_header() { return "algo,n,seed,alpha_or_params,queries,rounds,success,wall_ms"; }

std::string csv_row(const RunRow& row) {
  char wall[64];
  std::snprintf(wall, sizeof(wall), "%.3f", row.wall_ms);
  return row.algo + "," + std::to_string(row.n) + "," + std::to_string(row.seed) + "," + row.params + "," +
         std::to_string(row.queries) + "," + std::to_string(row.rounds) + "," + (row.success ? "1" : "0") + "," +
         wall;
}

void append_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError("cannot write " + path.string());
  if (fresh) out << csv_header() << '\n';
  for (const auto& row : rows) out << csv_row(row) << '\n';
}

std::vector<std::string> sweep_algorithms() {
  return {"find-matching-adaptive", "find-matching-parallel", "find-low-degree", "brute-force"};
}

Hypergraph sweep_instance(const SweepSpec& spec, std::size_t n, std::uint64_t seed) {
  if (spec.instance) return *spec.instance;
  const std::uint64_t instance_seed = stream_key(seed, 1);
  if (spec.algo == "find-low-degree") {
    LowDegreeSpec gen;
    gen.n = n;
    gen.max_degree = spec.lowdeg.max_degree;
    gen.max_size = spec.lowdeg.max_size;
    gen.size_ratio = spec.lowdeg.size_ratio;
    gen.edge_count = spec.lowdeg.edge_count.value_or(
        default_low_degree_edge_count(n, spec.lowdeg.max_degree, spec.lowdeg.max_size));
    gen.seed = instance_seed;
    return gen_low_degree(gen).graph;
  }
  return gen_matching(dense_matching_spec(n, instance_seed));
}

RunRow run_one(const SweepSpec& spec, std::size_t n, std::uint64_t seed) {
  const Hypergraph hidden = sweep_instance(spec, n, seed);
  EdgeOracle oracle(hidden);
  const std::uint64_t learner_seed = stream_key(seed, 2);
  RunRow row;
  row.algo = spec.algo;
  row.n = hidden.n();
  row.seed = seed;
  LearnOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  if (spec.algo == "find-matching-adaptive" || spec.algo == "find-matching-parallel") {
    MatchingConfig config;
    config.subroutine = spec.algo == "find-matching-parallel" ? Subroutine::kParallel : Subroutine::kAdaptive;
    config.alpha = spec.alpha;
    config.seed = learner_seed;
    row.params = "alpha=" + format_number(config.alpha.value_or(default_alpha(config.subroutine, hidden.n())));
    outcome = find_matching(oracle, config);
  } else if (spec.algo == "find-low-degree") {
    LowDegreeConfig config;
    config.max_degree = spec.lowdeg.max_degree;
    config.max_size = spec.lowdeg.max_size;
    config.size_ratio = spec.lowdeg.size_ratio;
    config.schedule = spec.lowdeg.schedule;
    config.seed = learner_seed;
    row.params = "delta=" + std::to_string(config.max_degree) + ";d=" + std::to_string(config.max_size) +
                 ";rho=" + format_number(config.size_ratio) + ";" + schedule_name(config.schedule);
    outcome = find_low_degree_edges(oracle, config);
  } else if (spec.algo == "brute-force") {
    row.params = "exhaustive";
    outcome = brute_force_learn(oracle);
  } else {
    throw InputError("unknown algorithm '" + spec.algo + "'");
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.queries = outcome.ledger.total_queries;
  row.rounds = outcome.ledger.rounds();
  row.success = outcome.learned == hidden;
  return row;
}

std::vector<RunRow> run_sweep(const SweepSpec& spec) {
  struct Task {
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t n : spec.n_values) {
    for (std::size_t i = 0; i < spec.seeds; ++i) tasks.push_back({n, spec.base_seed + i});
  }
  std::vector<RunRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = run_one(spec, tasks[i].n, tasks[i].seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(spec.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace hyperlearn
