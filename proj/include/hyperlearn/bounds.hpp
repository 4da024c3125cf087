#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperlearn/hypergraph.hpp"

namespace hyperlearn {

// Parameters of the two programs bounding the chance that a sampled edge is
// alone in its sample: degree bound, sampling probability, largest edge size,
// size ratio and number of vertices.
struct ProgramPoint {
  std::size_t max_degree = 2;
  double p = 0.5;
  std::size_t max_size = 2;
  double size_ratio = 1.0;
  std::size_t n = 100;
};

// floor(max_size / size_ratio): the smallest edge size the programs collapse to.
std::size_t collapsed_size(std::size_t max_size, double size_ratio);

// Minimum over feasible overlap counts of prod (1 - p^(size - overlap))^count,
// in closed form. Requires a collapsed size of at least 2.
double f_bullet(const ProgramPoint& point);
double log_f_bullet(const ProgramPoint& point);

// Maximum over feasible overlap counts of sum count * p^(size - overlap).
// Closed form when max_degree = 2 and size_ratio = 1, vertex enumeration of
// the collapsed program otherwise.
double lp_bullet(const ProgramPoint& point);
double lp_bullet_closed_form(double p, std::size_t collapsed, std::size_t n);
double lp_bullet_by_vertices(const ProgramPoint& point);
// Same optimum computed by vertex enumeration, in log space.
double log_f_bullet_by_vertices(const ProgramPoint& point);

// The programs before collapsing: one variable per (overlap, edge size) with
// edge sizes from the collapsed size up to max_size, solved by vertex
// enumeration.
double lp_bullet_uncollapsed(const ProgramPoint& point);
double log_f_bullet_uncollapsed(const ProgramPoint& point);

struct FailureBound {
  double value = 0.0;
  bool outside_regime = false;  // n < 100, where the chain is not guaranteed
};

// 1 - (ln n / 2n)^((max_degree - 1) * size_ratio).
FailureBound failure_bound(std::size_t n, std::size_t max_degree, double size_ratio);

// The middle and right terms of the sufficient bound on the program value.
double sufficient_bound_left(std::size_t n, std::size_t collapsed);
double sufficient_bound_middle(std::size_t n);
double sufficient_bound_right(std::size_t n);

double log_binomial(std::size_t n, std::size_t k);

// ((1 - p^d) / (1 - p^(d - x)))^(1/x)
double overlap_ratio_curve(double p, double d, double x);

struct InequalityRecord {
  std::string name;
  std::vector<std::pair<std::string, double>> point;
  double lhs = 0.0;  // the record asserts lhs <= rhs
  double rhs = 0.0;
  bool log_scale = false;
  bool holds = false;
};

struct ChainReport {
  std::vector<InequalityRecord> records;
  std::vector<std::string> skipped;

  bool all_hold() const;
  std::size_t failures() const;
};

struct ChainGrid {
  std::vector<std::size_t> n{100, 500, 10000};
  std::vector<std::size_t> max_size{2, 3, 4, 8};
  std::vector<double> size_ratio{1.0, 2.0};
  std::vector<std::size_t> max_degree{2, 3};
};

constexpr double kInequalitySlack = 1e-12;
constexpr double kConstraintTolerance = 1e-9;

// Evaluates every link of the chain from the program value down to the
// failure bound at each grid point with p = (2n)^(-size_ratio / max_size).
// Points whose collapsed size is below 2 are listed in `skipped`.
ChainReport verify_inequality_chain(const ChainGrid& grid = {});
std::string chain_report_json(const ChainReport& report);

struct ContainmentEstimate {
  double estimate = 0.0;  // P(some other edge inside S | e inside S)
  double standard_error = 0.0;
  std::uint64_t trials = 0;
};

// Monte-Carlo: force `focal` into S, keep every other vertex with prob. p.
ContainmentEstimate estimate_unique_containment(const Hypergraph& h, const Edge& focal, double p,
                                                std::uint64_t trials, std::uint64_t seed);

}  // namespace hyperlearn
