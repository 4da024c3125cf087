#include "hyperlearn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hyperlearn/errors.hpp"
#include "hyperlearn/oracle.hpp"
#include "hyperlearn/random.hpp"

namespace hyperlearn {

namespace {

struct ProgramVariable {
  double overlap_weight;  // coefficient in the overlap constraint
  double size_weight;     // coefficient in the size constraint
  double gain;            // objective coefficient, maximised
};

// Maximises sum gain * a subject to two packing constraints and a >= 0.
// With two constraints every vertex has at most two nonzero coordinates.
double maximise_by_vertices(const std::vector<ProgramVariable>& vars, double overlap_cap, double size_cap) {
  double best = 0.0;
  auto feasible = [&](double overlap_used, double size_used) {
    return overlap_used <= overlap_cap * (1 + kConstraintTolerance) + kConstraintTolerance &&
           size_used <= size_cap * (1 + kConstraintTolerance) + kConstraintTolerance;
  };
  for (const auto& v : vars) {
    double a = size_cap / v.size_weight;
    if (v.overlap_weight > 0) a = std::min(a, overlap_cap / v.overlap_weight);
    best = std::max(best, a * v.gain);
  }
  for (std::size_t k = 0; k < vars.size(); ++k) {
    for (std::size_t l = k + 1; l < vars.size(); ++l) {
      const auto& x = vars[k];
      const auto& y = vars[l];
      const double det = x.overlap_weight * y.size_weight - y.overlap_weight * x.size_weight;
      if (std::abs(det) < 1e-15) continue;
      const double ak = (overlap_cap * y.size_weight - y.overlap_weight * size_cap) / det;
      const double al = (x.overlap_weight * size_cap - overlap_cap * x.size_weight) / det;
      if (ak < -kConstraintTolerance || al < -kConstraintTolerance) continue;
      const double a = std::max(ak, 0.0);
      const double b = std::max(al, 0.0);
      if (!feasible(a * x.overlap_weight + b * y.overlap_weight, a * x.size_weight + b * y.size_weight)) continue;
      best = std::max(best, a * x.gain + b * y.gain);
    }
  }
  return best;
}

std::size_t checked_collapsed(const ProgramPoint& point) {
  if (!(point.p > 0.0 && point.p < 1.0)) throw InputError("p must lie in (0, 1)");
  if (point.max_degree < 1) throw InputError("max_degree must be at least 1");
  if (point.size_ratio < 1.0) throw InputError("size_ratio must be at least 1");
  const std::size_t collapsed = collapsed_size(point.max_size, point.size_ratio);
  if (collapsed < 2) throw InputError("max_size / size_ratio must be at least 2");
  return collapsed;
}

enum class Objective { kSum, kLogProduct };

double gain(Objective objective, double p, std::size_t exponent) {
  const double x = std::pow(p, static_cast<double>(exponent));
  return objective == Objective::kSum ? x : -std::log1p(-x);
}

double solve_collapsed(const ProgramPoint& point, Objective objective) {
  const std::size_t collapsed = checked_collapsed(point);
  std::vector<ProgramVariable> vars;
  for (std::size_t i = 0; i < collapsed; ++i) {
    vars.push_back({static_cast<double>(i), 1.0, gain(objective, point.p, collapsed - i)});
  }
  const double overlap_cap = static_cast<double>((point.max_degree - 1) * point.max_size);
  const double size_cap = static_cast<double>(point.max_degree * point.n) / static_cast<double>(collapsed);
  return maximise_by_vertices(vars, overlap_cap, size_cap);
}

double solve_uncollapsed(const ProgramPoint& point, Objective objective) {
  const std::size_t collapsed = checked_collapsed(point);
  std::vector<ProgramVariable> vars;
  for (std::size_t size = collapsed; size <= point.max_size; ++size) {
    for (std::size_t i = 0; i < size; ++i) {
      vars.push_back({static_cast<double>(i), static_cast<double>(size), gain(objective, point.p, size - i)});
    }
  }
  const double overlap_cap = static_cast<double>((point.max_degree - 1) * point.max_size);
  const double size_cap = static_cast<double>(point.max_degree * point.n);
  return maximise_by_vertices(vars, overlap_cap, size_cap);
}

}  // namespace

std::size_t collapsed_size(std::size_t max_size, double size_ratio) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(max_size) / size_ratio + 1e-12));
}

double log_f_bullet(const ProgramPoint& point) {
  const std::size_t collapsed = checked_collapsed(point);
  const auto dm = static_cast<double>(collapsed);
  const double size_cap = static_cast<double>(point.max_degree * point.n) / dm;
  const double top = std::min(static_cast<double>((point.max_degree - 1) * point.max_size) / (dm - 1.0), size_cap);
  const double rest = size_cap - top;
  return top * std::log1p(-point.p) + rest * std::log1p(-std::pow(point.p, dm));
}

double f_bullet(const ProgramPoint& point) { return std::exp(log_f_bullet(point)); }

double lp_bullet_closed_form(double p, std::size_t collapsed, std::size_t n) {
  if (collapsed < 2) throw InputError("collapsed size must be at least 2");
  const auto dm = static_cast<double>(collapsed);
  const double size_cap = 2.0 * static_cast<double>(n) / dm;
  const double top = std::min(dm / (dm - 1.0), size_cap);
  return top * p + (size_cap - top) * std::pow(p, dm);
}

double lp_bullet(const ProgramPoint& point) {
  const std::size_t collapsed = checked_collapsed(point);
  if (point.max_degree == 2 && collapsed == point.max_size) return lp_bullet_closed_form(point.p, collapsed, point.n);
  return lp_bullet_by_vertices(point);
}

double lp_bullet_by_vertices(const ProgramPoint& point) { return solve_collapsed(point, Objective::kSum); }

double log_f_bullet_by_vertices(const ProgramPoint& point) { return -solve_collapsed(point, Objective::kLogProduct); }

double lp_bullet_uncollapsed(const ProgramPoint& point) { return solve_uncollapsed(point, Objective::kSum); }

double log_f_bullet_uncollapsed(const ProgramPoint& point) { return -solve_uncollapsed(point, Objective::kLogProduct); }

FailureBound failure_bound(std::size_t n, std::size_t max_degree, double size_ratio) {
  if (n < 2) throw InputError("n must be at least 2");
  const double nd = static_cast<double>(n);
  const double exponent = static_cast<double>(max_degree - 1) * size_ratio;
  FailureBound out;
  out.value = -std::expm1(exponent * std::log(std::log(nd) / (2.0 * nd)));
  out.outside_regime = n < 100;
  return out;
}

double sufficient_bound_left(std::size_t n, std::size_t collapsed) {
  const double nd = static_cast<double>(n);
  const double dm = static_cast<double>(collapsed);
  return dm / (dm - 1.0) * std::pow(nd, -1.0 / dm) + 1.0 / dm;
}

double sufficient_bound_middle(std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd / (nd - 1.0) * std::pow(nd, -1.0 / nd) + 1.0 / nd;
}

double sufficient_bound_right(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 1.0 - std::log(nd) / (2.0 * nd);
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

double overlap_ratio_curve(double p, double d, double x) {
  return std::pow((1.0 - std::pow(p, d)) / (1.0 - std::pow(p, d - x)), 1.0 / x);
}

bool ChainReport::all_hold() const { return failures() == 0; }

std::size_t ChainReport::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.holds; }));
}

namespace {

class ChainBuilder {
 public:
  explicit ChainBuilder(ChainReport& report) : report_(report) {}

  void at(std::vector<std::pair<std::string, double>> point) { point_ = std::move(point); }

  void add(const std::string& name, double lhs, double rhs, bool log_scale = false) {
    InequalityRecord rec;
    rec.name = name;
    rec.point = point_;
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.log_scale = log_scale;
    rec.holds = lhs <= rhs + kInequalitySlack * std::max(1.0, std::abs(rhs));
    report_.records.push_back(std::move(rec));
  }

 private:
  ChainReport& report_;
  std::vector<std::pair<std::string, double>> point_;
};

void add_curve_record(ChainBuilder& chain, double p, std::size_t d) {
  // Largest drop between consecutive samples of the curve on [1, d - 1].
  constexpr int kSamples = 400;
  double worst_drop = -std::numeric_limits<double>::infinity();
  const double span = static_cast<double>(d) - 2.0;
  double previous = overlap_ratio_curve(p, static_cast<double>(d), 1.0);
  for (int t = 1; t <= kSamples && span > 0; ++t) {
    const double x = 1.0 + span * t / kSamples;
    const double current = overlap_ratio_curve(p, static_cast<double>(d), x);
    worst_drop = std::max(worst_drop, previous - current);
    previous = current;
  }
  if (span <= 0) worst_drop = 0.0;
  chain.add("overlap-curve-nondecreasing", worst_drop, 0.0);
}

}  // namespace

ChainReport verify_inequality_chain(const ChainGrid& grid) {
  ChainReport report;
  ChainBuilder chain(report);
  for (std::size_t n : grid.n) {
    const double nd = static_cast<double>(n);
    for (std::size_t k = 1; static_cast<double>(k) < std::sqrt(nd); ++k) {
      chain.at({{"n", nd}, {"k", static_cast<double>(k)}});
      const double log_power = static_cast<double>(k) * std::log(nd) - std::lgamma(static_cast<double>(k) + 1);
      const double log_choose = log_binomial(n, k);
      chain.add("binomial-lower", log_power - std::log(4.0), log_choose, true);
      chain.add("binomial-upper", log_choose, log_power, true);
    }
    for (std::size_t d : grid.max_size) {
      for (double rho : grid.size_ratio) {
        const std::size_t dm = collapsed_size(d, rho);
        if (dm < 2 || dm > n) {
          std::ostringstream why;
          why << "n=" << n << " d=" << d << " rho=" << rho << ": floor(d/rho) = " << dm << " is below 2";
          report.skipped.push_back(why.str());
          continue;
        }
        const double p = std::pow(2.0 * nd, -rho / static_cast<double>(d));
        const ProgramPoint pair_point{2, p, dm, 1.0, n};
        const double lp_pair = lp_bullet(pair_point);
        const double log_f_pair = log_f_bullet(pair_point);

        chain.at({{"n", nd}, {"d", static_cast<double>(d)}, {"rho", rho}, {"p", p}});
        chain.add("lp-closed-form-optimal", lp_bullet_by_vertices(pair_point), lp_pair);
        chain.add("product-vs-sum", 1.0 - lp_pair, std::exp(log_f_pair));
        const double dmd = static_cast<double>(dm);
        const double lp_upper = dmd / (dmd - 1.0) * p + 2.0 * nd / dmd * std::pow(p, dmd);
        chain.add("lp-upper", lp_pair, lp_upper);
        chain.add("lp-upper-at-sampling-rate", lp_upper, sufficient_bound_left(n, dm));
        chain.add("sufficient-left", sufficient_bound_left(n, dm), sufficient_bound_middle(n));
        chain.add("sufficient-right", sufficient_bound_middle(n), sufficient_bound_right(n));
        chain.add("lp-bound", lp_pair, sufficient_bound_right(n));
        add_curve_record(chain, p, dm);

        for (std::size_t delta : grid.max_degree) {
          const ProgramPoint full{delta, p, d, rho, n};
          const double exponent = static_cast<double>(delta - 1) * rho;
          const double log_f_full = log_f_bullet(full);
          chain.at({{"n", nd}, {"d", static_cast<double>(d)}, {"rho", rho}, {"delta", static_cast<double>(delta)}, {"p", p}});
          chain.add("f-closed-form-optimal", log_f_full, log_f_bullet_by_vertices(full), true);
          chain.add("f-collapse", log_f_full, log_f_bullet_uncollapsed(full), true);
          chain.add("lp-collapse", lp_bullet_uncollapsed(full), lp_bullet_by_vertices(full));
          chain.add("degree-reduction", exponent * log_f_pair, log_f_full, true);
          if (delta == 2) {
            chain.add("product-vs-sum-general", 1.0 - lp_bullet(full), std::exp(log_f_full));
          }
          chain.add("composed-upper", exponent * std::log1p(-lp_pair), log_f_full, true);
          chain.add("composed-lower", exponent * std::log(std::log(nd) / (2.0 * nd)), exponent * std::log1p(-lp_pair), true);
          chain.add("failure-bound", -std::expm1(log_f_full), failure_bound(n, delta, rho).value);
        }
      }
    }
  }
  chain.at({{"p", 0.5}, {"d", 8.0}});
  add_curve_record(chain, 0.5, 8);
  return report;
}

std::string chain_report_json(const ChainReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json point = nlohmann::json::object();
    for (const auto& [key, value] : r.point) point[key] = value;
    records.push_back({{"name", r.name},
                       {"point", point},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"log_scale", r.log_scale},
                       {"holds", r.holds}});
  }
  nlohmann::json doc = {{"records", records},
                        {"skipped", report.skipped},
                        {"failures", report.failures()},
                        {"all_hold", report.all_hold()},
                        {"slack", kInequalitySlack}};
  return doc.dump(2);
}

ContainmentEstimate estimate_unique_containment(const Hypergraph& h, const Edge& focal, double p,
                                                std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("need at least one trial");
  std::vector<Edge> others;
  for (const Edge& e : h.edges()) {
    if (e != focal) others.push_back(e);
  }
  const EdgeOracle oracle{Hypergraph(h.n(), std::move(others))};
  std::vector<Vertex> outside;
  for (std::size_t v = 0; v < h.n(); ++v) {
    if (!focal.contains(static_cast<Vertex>(v))) outside.push_back(static_cast<Vertex>(v));
  }
  SubsetSampler sampler(h.n(), outside, p);
  VertexMask mask(h.n());
  SplitMix64 rng(stream_key(seed, 0x7563));
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    sampler.draw(rng, mask);
    for (Vertex v : focal) mask.set(v);
    if (oracle.evaluate(mask)) ++hits;
  }
  ContainmentEstimate out;
  out.trials = trials;
  out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace hyperlearn
