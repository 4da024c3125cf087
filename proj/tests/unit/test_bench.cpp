#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperlearn/bench.hpp"
#include "hyperlearn/errors.hpp"

using namespace hyperlearn;

namespace {

std::vector<std::string> strip_wall(const std::vector<RunRow>& rows) {
  std::vector<std::string> out;
  for (auto row : rows) {
    row.wall_ms = 0;
    out.push_back(csv_row(row));
  }
  return out;
}

}  // namespace

TEST(Csv, HeaderAndRowLayout) {
  EXPECT_EQ(csv_header(), "algo,n,seed,alpha_or_params,queries,rounds,success,wall_ms");
  RunRow row{"find-matching-adaptive", 64, 3, "alpha=1.5", 1234, 17, true, 2.5};
  EXPECT_EQ(csv_row(row), "find-matching-adaptive,64,3,alpha=1.5,1234,17,1,2.500");
}

TEST(Csv, AppendWritesTheHeaderOnce) {
  const auto path = std::filesystem::temp_directory_path() / "hyperlearn_append.csv";
  std::filesystem::remove(path);
  const std::vector<RunRow> rows{{"brute-force", 8, 1, "exhaustive", 256, 1, true, 0.1}};
  append_csv(path, rows);
  append_csv(path, rows);
  std::ifstream in(path);
  std::string line;
  int headers = 0;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    headers += line == csv_header() ? 1 : 0;
  }
  EXPECT_EQ(headers, 1);
  EXPECT_EQ(lines, 3);
  std::filesystem::remove(path);
}

TEST(Sweep, RowCountOrderAndSeeds) {
  SweepSpec spec;
  spec.algo = "find-matching-adaptive";
  spec.n_values = {32, 48};
  spec.seeds = 3;
  spec.base_seed = 10;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 6U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, spec.n_values[i / 3]);
    EXPECT_EQ(rows[i].seed, 10 + i % 3);
    EXPECT_TRUE(rows[i].success);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeRows) {
  for (const std::string algo : {"find-matching-adaptive", "find-matching-parallel", "find-low-degree", "brute-force"}) {
    SweepSpec spec;
    spec.algo = algo;
    spec.n_values = algo == "brute-force" ? std::vector<std::size_t>{10, 12} : std::vector<std::size_t>{24, 40};
    spec.seeds = 2;
    const auto serial = run_sweep(spec);
    spec.jobs = 3;
    const auto threaded = run_sweep(spec);
    EXPECT_EQ(strip_wall(serial), strip_wall(threaded)) << algo;
    EXPECT_EQ(strip_wall(serial), strip_wall(run_sweep(spec))) << algo;
  }
}

TEST(Sweep, GivenInstanceIsUsed) {
  SweepSpec spec;
  spec.algo = "find-matching-parallel";
  spec.instance = Hypergraph(20, {Edge{1, 2}, Edge{5, 6, 7}});
  spec.n_values = {20};
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_TRUE(rows[0].success);
  EXPECT_EQ(sweep_instance(spec, 20, 1), *spec.instance);
}

TEST(Sweep, UnknownAlgorithm) {
  SweepSpec spec;
  spec.algo = "magic";
  spec.n_values = {10};
  EXPECT_THROW(run_sweep(spec), InputError);
}
