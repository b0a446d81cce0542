#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline std::vector<double> sample_acf(const std::vector<double>& x, std::size_t max_lag) {
  const double m = mean(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  std::vector<double> out(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double c = 0.0;
    for (std::size_t i = k; i < x.size(); ++i) c += (x[i] - m) * (x[i - k] - m);
    out[k] = c / c0;
  }
  return out;
}

// Two-sample Kolmogorov-Smirnov test, asymptotic p-value.
inline double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    q += 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(q, 0.0, 1.0);
}

// Crossing indices of a difference sequence: positions where the sign,
// with zeros carrying the previous sign, changes.
inline std::vector<std::size_t> brute_crossings(const std::vector<double>& diff) {
  std::vector<std::size_t> out;
  int prev = 0;
  for (std::size_t t = 0; t < diff.size(); ++t) {
    int s = diff[t] > 0 ? 1 : (diff[t] < 0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) out.push_back(t);
    prev = s;
  }
  return out;
}

// Trailing mean by direct summation.
inline std::vector<double> brute_ma(const std::vector<double>& y, std::size_t n) {
  std::vector<double> out;
  for (std::size_t t = n - 1; t < y.size(); ++t) {
    long double s = 0.0L;
    for (std::size_t k = 0; k < n; ++k) s += y[t - k];
    out.push_back(static_cast<double>(s / static_cast<long double>(n)));
  }
  return out;
}

inline std::vector<double> integer_walk(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(-3, 3);
  std::vector<double> y(length);
  double level = 0.0;
  for (auto& v : y) {
    level += step(rng);
    v = level;
  }
  return y;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mace_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace testsupport
