#include "mace/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mace/errors.hpp"

namespace mace {
namespace {

constexpr double kLn10 = 2.302585092994045684;

// Lentz evaluation of the continued fraction for I_x(a, b); valid for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10'000; ++m) {
    const double md = m;
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) break;
  }
  return h;
}

double log_beta_prefactor(double a, double b, double x) {
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
}

double median_of(std::vector<double>& v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace

double log_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ParameterError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0) return 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return log_beta_prefactor(a, b, x) + std::log(beta_continued_fraction(a, b, x) / a);
  }
  const double complement = std::exp(log_beta_prefactor(a, b, x)) * beta_continued_fraction(b, a, 1.0 - x) / b;
  return std::log1p(-complement);
}

double incomplete_beta(double a, double b, double x) {
  return std::exp(log_incomplete_beta(a, b, x));
}

double student_t_two_sided(double t, double dof) {
  if (!(dof > 0.0)) throw ParameterError("Student-t needs positive degrees of freedom");
  if (std::isnan(t)) throw ParameterError("t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

PairedSample align_curves(const EntropyCurve& x, const EntropyCurve& ref) {
  return align_curves(std::span<const EntropyCurve>(&x, 1), std::span<const EntropyCurve>(&ref, 1));
}

PairedSample align_curves(std::span<const EntropyCurve> x, std::span<const EntropyCurve> ref) {
  if (x.empty() || ref.empty()) throw DataError("align_curves needs non-empty curve sets");
  std::map<CurveCoord, double> left, right;
  for (const auto& c : x) {
    for (const auto& [tau, s] : c.points) left[{c.n, tau}] = s;
  }
  for (const auto& c : ref) {
    for (const auto& [tau, s] : c.points) right[{c.n, tau}] = s;
  }
  if (left.empty() || right.empty()) throw DataError("align_curves needs non-empty curves");

  PairedSample sample;
  for (const auto& [key, s] : left) {
    if (auto it = right.find(key); it != right.end()) {
      sample.keys.push_back(key);
      sample.a.push_back(s);
      sample.b.push_back(it->second);
    } else {
      ++sample.dropped_a;
    }
  }
  sample.dropped_b = right.size() - sample.keys.size();
  if (sample.keys.empty()) throw DataError("curves share no (tau, n) coordinates");
  return sample;
}

TestResult paired_t_test(std::span<const double> diff) {
  if (diff.size() < 2) throw DataError("paired t-test needs at least 2 pairs");
  const double m = static_cast<double>(diff.size());
  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= m;
  double ss = 0.0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (m - 1.0));

  TestResult r;
  r.pairs = diff.size();
  r.dof = diff.size() - 1;
  if (sd == 0.0) {
    if (mean == 0.0) {
      r.t_stat = 0.0;
      r.p_value = 1.0;
      r.log10_p = 0.0;
    } else {
      r.t_stat = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p_value = 0.0;
      r.log10_p = -std::numeric_limits<double>::infinity();
    }
  } else {
    r.t_stat = mean * std::sqrt(m) / sd;
    const double dof = static_cast<double>(r.dof);
    const double lp = log_incomplete_beta(0.5 * dof, 0.5, dof / (dof + r.t_stat * r.t_stat));
    r.log10_p = lp / kLn10;
    r.p_value = std::clamp(std::exp(lp), 0.0, 1.0);
  }
  r.reject_at_5pct = r.p_value < 0.05;
  return r;
}

TestResult paired_t_test(const PairedSample& sample) {
  if (sample.a.size() != sample.b.size()) throw DataError("paired sample sides differ in length");
  std::vector<double> diff(sample.a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sample.a[i] - sample.b[i];
  return paired_t_test(diff);
}

std::vector<EntropyCurve> ensemble_median_curves(const std::vector<std::vector<EntropyCurve>>& members) {
  if (members.empty()) throw DataError("ensemble is empty");
  const std::size_t windows = members.front().size();
  for (const auto& m : members) {
    if (m.size() != windows) throw DataError("ensemble members cover different window grids");
  }
  std::vector<EntropyCurve> out(windows);
  for (std::size_t w = 0; w < windows; ++w) {
    std::map<std::size_t, std::vector<double>> pooled;
    for (const auto& m : members) {
      if (m[w].n != members.front()[w].n) throw DataError("ensemble members disagree on window sizes");
      for (const auto& [tau, s] : m[w].points) pooled[tau].push_back(s);
    }
    out[w].n = members.front()[w].n;
    out[w].horizon = members.front()[w].horizon;
    for (auto& [tau, values] : pooled) out[w].points[tau] = median_of(values);
  }
  return out;
}

PTable ttest_table(const CurveFamilies& curves, const ReferenceFamilies& ref) {
  PTable table;
  std::set<int> horizons;
  std::vector<std::string> sets;
  for (const auto& [key, family] : curves) {
    horizons.insert(key.first);
    if (std::find(sets.begin(), sets.end(), key.second) == sets.end()) sets.push_back(key.second);
  }
  for (int m : horizons) {
    if (!ref.contains(m)) throw DataError("no benchmark curves for horizon M=" + std::to_string(m));
  }
  table.horizons.assign(horizons.begin(), horizons.end());
  table.sets = sets;
  for (const auto& [key, family] : curves) {
    table.cells[key] = paired_t_test(align_curves(family, ref.at(key.first)));
  }
  return table;
}

}  // namespace mace
