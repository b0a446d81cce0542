#pragma once

// Paired t-tests of entropy curves against the uncorrelated (H = 0.5)
// benchmark, and the Student-t machinery behind them.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mace/cluster_entropy.hpp"

namespace mace {

struct CurveCoord {
  std::size_t n = 0;
  std::size_t tau = 0;
  friend auto operator<=>(const CurveCoord&, const CurveCoord&) = default;
};

struct PairedSample {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<CurveCoord> keys;
  std::size_t dropped_a = 0;  // coordinates only present in the first set
  std::size_t dropped_b = 0;  // coordinates only present in the reference

  [[nodiscard]] std::size_t size() const noexcept { return a.size(); }
};

struct TestResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  /// log10 of the two-sided p-value; finite even where p_value underflows.
  double log10_p = 0.0;
  std::size_t dof = 0;
  bool reject_at_5pct = false;
  std::size_t pairs = 0;
};

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);
/// Natural log of I_x(a, b), accurate where I_x underflows.
double log_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student-t with `dof` degrees.
double student_t_two_sided(double t, double dof);

PairedSample align_curves(const EntropyCurve& x, const EntropyCurve& ref);
/// Pairs over all (tau, n) coordinates shared by the two curve families.
PairedSample align_curves(std::span<const EntropyCurve> x, std::span<const EntropyCurve> ref);

/// t = mean(d) sqrt(n) / sd(d). Zero-variance differences give p = 1 when the
/// mean is zero and p = 0 otherwise.
TestResult paired_t_test(const PairedSample& sample);
TestResult paired_t_test(std::span<const double> differences);

/// Per-(n, tau) median across ensemble members, over the members where the
/// coordinate is observed. Each member is one curve per window.
std::vector<EntropyCurve> ensemble_median_curves(const std::vector<std::vector<EntropyCurve>>& members);

/// p-values indexed by (M, set label).
struct PTable {
  std::vector<int> horizons;
  std::vector<std::string> sets;
  std::map<std::pair<int, std::string>, TestResult> cells;

  [[nodiscard]] const TestResult& at(int horizon, const std::string& set) const { return cells.at({horizon, set}); }
};

/// Curves per (M, set); reference curves per M.
using CurveFamilies = std::map<std::pair<int, std::string>, std::vector<EntropyCurve>>;
using ReferenceFamilies = std::map<int, std::vector<EntropyCurve>>;

PTable ttest_table(const CurveFamilies& curves, const ReferenceFamilies& ref);

}  // namespace mace
