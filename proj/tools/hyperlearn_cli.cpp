#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperlearn/bench.hpp"
#include "hyperlearn/bounds.hpp"
#include "hyperlearn/errors.hpp"
#include "hyperlearn/hardness.hpp"
#include "hyperlearn/instance_io.hpp"

namespace hl = hyperlearn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::uint64_t default_seed() {
  const char* env = std::getenv("HYPERLEARN_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (*end != '\0') throw hl::InputError("HYPERLEARN_SEED must be a non-negative integer");
  return value;
}

struct Common {
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::string out;
  unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Base seed; defaults to $HYPERLEARN_SEED or 1");
  cmd->add_option("--seeds", common.seeds, "Runs per n, with seeds base, base+1, ...")->check(CLI::PositiveNumber);
  cmd->add_option("--out", common.out, "Append CSV rows to this file instead of printing them");
  cmd->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

int emit_rows(const std::vector<hl::RunRow>& rows, const std::string& out) {
  if (!out.empty()) {
    hl::append_csv(out, rows);
  } else {
    std::cout << hl::csv_header() << '\n';
    for (const auto& row : rows) std::cout << hl::csv_row(row) << '\n';
  }
  for (const auto& row : rows) {
    if (!row.success) return kExitFailed;
  }
  return kExitOk;
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw hl::InputError("bad entry '" + item + "' in --n-list");
    }
  }
  if (values.empty()) throw hl::InputError("--n-list is empty");
  return values;
}

hl::ChainGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hl::InputError("cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw hl::InputError(std::string("grid file: ") + e.what());
  }
  hl::ChainGrid grid;
  try {
    if (j.contains("n")) grid.n = j["n"].get<std::vector<std::size_t>>();
    if (j.contains("d")) grid.max_size = j["d"].get<std::vector<std::size_t>>();
    if (j.contains("rho")) grid.size_ratio = j["rho"].get<std::vector<double>>();
    if (j.contains("delta")) grid.max_degree = j["delta"].get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw hl::InputError(std::string("grid file: ") + e.what());
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning hidden hypergraphs from edge-detecting queries"};
  app.require_subcommand(1);

  Common common;
  try {
    common.seed = default_seed();
  } catch (const hl::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  // learn-matching
  auto* matching = app.add_subcommand("learn-matching", "Learn a hidden hypermatching");
  add_common(matching, common);
  std::size_t matching_n = 256;
  std::optional<double> alpha;
  std::string subroutine = "adaptive";
  std::string matching_instance;
  matching->add_option("--n", matching_n, "Vertices of the generated instance")->check(CLI::Range(3, 1 << 24));
  matching->add_option("--alpha", alpha, "Growth factor of the size limit")->check(CLI::Range(1.0 + 1e-9, 1e9));
  matching->add_option("--subroutine", subroutine, "Edge search subroutine")
      ->check(CLI::IsMember({"parallel", "adaptive"}));
  matching->add_option("--instance", matching_instance, "Learn this instance JSON instead")->check(CLI::ExistingFile);

  // learn-lowdeg
  auto* lowdeg = app.add_subcommand("learn-lowdeg", "Learn a hidden low-degree near-uniform hypergraph");
  add_common(lowdeg, common);
  std::size_t lowdeg_n = 100;
  hl::LowDegreeParams lowdeg_params;
  bool eager = false;
  std::string lowdeg_instance;
  lowdeg->add_option("--n", lowdeg_n, "Vertices of the generated instance")->check(CLI::Range(2, 1 << 24));
  lowdeg->add_option("--rho", lowdeg_params.size_ratio, "Edge size ratio")->check(CLI::Range(1.0, 1e6));
  lowdeg->add_option("--d", lowdeg_params.max_size, "Largest edge size")->check(CLI::PositiveNumber);
  lowdeg->add_option("--delta", lowdeg_params.max_degree, "Largest degree")->check(CLI::Range(2, 1 << 20));
  lowdeg->add_option("--m", lowdeg_params.edge_count, "Edges of the generated instance");
  auto* lazy_flag = lowdeg->add_flag("--lazy", "Ask deletions only for positive samples (default)");
  lowdeg->add_flag("--eager", eager, "Ask every query in a single round")->excludes(lazy_flag);
  lowdeg->add_option("--instance", lowdeg_instance, "Learn this instance JSON instead")->check(CLI::ExistingFile);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate and check the bound programs");
  bounds->require_subcommand(1);
  auto* verify = bounds->add_subcommand("verify", "Check the inequality chain on a grid");
  std::string grid_file;
  std::string report_out;
  verify->add_option("--grid", grid_file, "JSON grid {n, d, rho, delta}")->check(CLI::ExistingFile);
  verify->add_option("--out", report_out, "Write the JSON report here");
  auto* eval = bounds->add_subcommand("eval", "Evaluate both programs at one point");
  hl::ProgramPoint point;
  eval->add_option("--delta", point.max_degree, "Largest degree")->required()->check(CLI::PositiveNumber);
  eval->add_option("--p", point.p, "Sampling probability")->required()->check(CLI::Range(1e-300, 1.0));
  eval->add_option("--d", point.max_size, "Largest edge size")->required()->check(CLI::PositiveNumber);
  eval->add_option("--rho", point.size_ratio, "Edge size ratio")->required()->check(CLI::Range(1.0, 1e6));
  eval->add_option("--n", point.n, "Vertices")->required()->check(CLI::Range(2, 1 << 30));

  // hardness
  auto* hardness = app.add_subcommand("hardness", "Indistinguishability experiments on the hard families");
  hardness->require_subcommand(1);
  std::size_t hard_n = 0;
  std::optional<std::size_t> tower_c;
  std::uint64_t hard_queries = 10000;
  std::size_t hard_seeds = 1;
  std::uint64_t hard_seed = common.seed;
  std::size_t redraws = 20;
  std::string hard_out;
  hl::HardFamily family = hl::HardFamily::kThreePart;
  for (auto [name, fam] : {std::pair{"three-part", hl::HardFamily::kThreePart}, std::pair{"tower", hl::HardFamily::kTower}}) {
    auto* sub = hardness->add_subcommand(name, std::string("Experiment on the ") + name + " family");
    sub->add_option("--n", hard_n, "Vertices")->required()->check(CLI::Range(4, 1 << 30));
    if (fam == hl::HardFamily::kTower) sub->add_option("--c", tower_c, "Level multiplier")->check(CLI::PositiveNumber);
    sub->add_option("--queries", hard_queries, "Random queries per experiment")->check(CLI::PositiveNumber);
    sub->add_option("--seeds", hard_seeds, "Experiments, with seeds base, base+1, ...")->check(CLI::PositiveNumber);
    sub->add_option("--seed", hard_seed, "Base seed; defaults to $HYPERLEARN_SEED or 1");
    sub->add_option("--redraws", redraws, "Hidden-part redraws per experiment")->check(CLI::Range(2, 1000));
    sub->add_option("--out", hard_out, "Write the JSON reports here");
    sub->callback([&family, fam] { family = fam; });
  }

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark sweeps");
  bench->require_subcommand(1);
  auto* sweep = bench->add_subcommand("sweep", "Run an algorithm over a list of sizes");
  add_common(sweep, common);
  std::string algo;
  std::string n_list;
  hl::LowDegreeParams sweep_lowdeg;
  bool sweep_eager = false;
  std::optional<double> sweep_alpha;
  sweep->add_option("--algo", algo, "Algorithm")->required()->check(CLI::IsMember(hl::sweep_algorithms()));
  sweep->add_option("--n-list", n_list, "Comma-separated sizes")->required();
  sweep->add_option("--alpha", sweep_alpha, "Growth factor for the matching learners")
      ->check(CLI::Range(1.0 + 1e-9, 1e9));
  sweep->add_option("--delta", sweep_lowdeg.max_degree, "Largest degree for find-low-degree")
      ->check(CLI::Range(2, 1 << 20));
  sweep->add_option("--d", sweep_lowdeg.max_size, "Largest edge size for find-low-degree")->check(CLI::PositiveNumber);
  sweep->add_option("--rho", sweep_lowdeg.size_ratio, "Edge size ratio for find-low-degree")
      ->check(CLI::Range(1.0, 1e6));
  sweep->add_flag("--eager", sweep_eager, "Single-round schedule for find-low-degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*matching) {
      hl::SweepSpec spec;
      spec.algo = subroutine == "parallel" ? "find-matching-parallel" : "find-matching-adaptive";
      spec.alpha = alpha;
      spec.seeds = common.seeds;
      spec.base_seed = common.seed;
      spec.jobs = common.jobs;
      if (!matching_instance.empty()) {
        auto h = hl::load_instance(matching_instance);
        if (!h.is_matching()) throw hl::InputError("instance is not a hypermatching");
        if (h.n() < 3) throw hl::InputError("instance needs at least 3 vertices");
        spec.n_values = {h.n()};
        spec.instance = std::move(h);
      } else {
        spec.n_values = {matching_n};
      }
      return emit_rows(hl::run_sweep(spec), common.out);
    }

    if (*lowdeg) {
      hl::SweepSpec spec;
      spec.algo = "find-low-degree";
      lowdeg_params.schedule = eager ? hl::DeletionSchedule::kEager : hl::DeletionSchedule::kLazy;
      spec.lowdeg = lowdeg_params;
      spec.seeds = common.seeds;
      spec.base_seed = common.seed;
      spec.jobs = common.jobs;
      if (!lowdeg_instance.empty()) {
        auto h = hl::load_instance(lowdeg_instance);
        if (!h.is_antichain()) throw hl::InputError("instance is not an antichain");
        spec.n_values = {h.n()};
        spec.instance = std::move(h);
      } else {
        spec.n_values = {lowdeg_n};
      }
      return emit_rows(hl::run_sweep(spec), common.out);
    }

    if (*verify) {
      const auto report = hl::verify_inequality_chain(grid_file.empty() ? hl::ChainGrid{} : load_grid(grid_file));
      const std::string json = hl::chain_report_json(report);
      if (!report_out.empty()) {
        std::ofstream(report_out) << json << '\n';
      }
      std::printf("records %zu  failures %zu  skipped %zu\n", report.records.size(), report.failures(),
                  report.skipped.size());
      for (const auto& r : report.records) {
        if (!r.holds) std::printf("FAILED %s: %.12g > %.12g\n", r.name.c_str(), r.lhs, r.rhs);
      }
      return report.all_hold() ? kExitOk : kExitFailed;
    }

    if (*eval) {
      std::printf("f_bullet %.6f\n", hl::f_bullet(point));
      std::printf("lp_bullet %.6f\n", hl::lp_bullet(point));
      const auto fb = hl::failure_bound(point.n, point.max_degree, point.size_ratio);
      std::printf("failure_bound %.6f%s\n", fb.value, fb.outside_regime ? " (n < 100: outside regime)" : "");
      return kExitOk;
    }

    if (*hardness) {
      nlohmann::json reports = nlohmann::json::array();
      for (std::size_t i = 0; i < hard_seeds; ++i) {
        hl::ExperimentSetup setup;
        setup.family = family;
        setup.n = hard_n;
        setup.queries = hard_queries;
        setup.seed = hard_seed + i;
        setup.tower_c = tower_c;
        setup.redraws = redraws;
        reports.push_back(nlohmann::json::parse(hl::indistinguishability_json(hl::indistinguishability_experiment(setup))));
      }
      if (hard_out.empty()) {
        std::cout << reports.dump(2) << '\n';
      } else {
        std::ofstream(hard_out) << reports.dump(2) << '\n';
      }
      return kExitOk;
    }

    if (*sweep) {
      hl::SweepSpec spec;
      spec.algo = algo;
      spec.n_values = parse_n_list(n_list);
      spec.seeds = common.seeds;
      spec.base_seed = common.seed;
      spec.jobs = common.jobs;
      spec.alpha = sweep_alpha;
      sweep_lowdeg.schedule = sweep_eager ? hl::DeletionSchedule::kEager : hl::DeletionSchedule::kLazy;
      spec.lowdeg = sweep_lowdeg;
      return emit_rows(hl::run_sweep(spec), common.out);
    }
  } catch (const hl::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hl::BudgetRefused& e) {
    std::cerr << "refused: " << e.what() << '\n';
    std::fprintf(stderr, "demand %.0f cap %.0f\n", e.demand(), e.cap());
    return kExitInfeasible;
  } catch (const hl::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
