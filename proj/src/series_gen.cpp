#include "mace/series_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fft.hpp"
#include "mace/errors.hpp"

namespace mace {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> standard_normals(std::mt19937_64& rng, std::size_t count) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(count);
  for (double& v : z) v = normal(rng);
  return z;
}

// Davies-Harte. Returns false if the embedding is not non-negative definite.
bool fgn_circulant(double hurst, std::size_t count, std::mt19937_64& rng, std::vector<double>& out) {
  const std::size_t half = fft::next_pow2(count);
  const std::size_t length = 2 * half;
  const auto gamma = fgn_autocovariance(hurst, half);

  std::vector<fft::cplx> row(length);
  for (std::size_t j = 0; j <= half; ++j) row[j] = gamma[j];
  for (std::size_t j = half + 1; j < length; ++j) row[j] = gamma[length - j];
  const auto spectrum = fft::forward(row);

  double lambda_max = 0.0;
  double lambda_min = 0.0;
  for (const auto& s : spectrum) {
    lambda_max = std::max(lambda_max, s.real());
    lambda_min = std::min(lambda_min, s.real());
  }
  if (lambda_min < -1e-10 * lambda_max) return false;

  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<fft::cplx> weighted(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    const double scale = std::sqrt(std::max(spectrum[k].real(), 0.0) / static_cast<double>(length));
    weighted[k] = scale * fft::cplx(re, im);
  }
  const auto mixed = fft::forward(weighted);
  out.resize(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = mixed[j].real();
  return true;
}

// Durbin-Levinson on the exact autocovariance.
std::vector<double> fgn_hosking(double hurst, std::size_t count, std::mt19937_64& rng) {
  const auto gamma = fgn_autocovariance(hurst, count);
  const auto z = standard_normals(rng, count);
  std::vector<double> x(count);
  if (count == 0) return x;

  std::vector<double> phi(count, 0.0), prev(count, 0.0);
  double variance = gamma[0];
  x[0] = std::sqrt(variance) * z[0];
  for (std::size_t t = 1; t < count; ++t) {
    double acc = gamma[t];
    for (std::size_t j = 1; j < t; ++j) acc -= prev[j] * gamma[t - j];
    const double reflection = acc / variance;
    phi[t] = reflection;
    for (std::size_t j = 1; j < t; ++j) phi[j] = prev[j] - reflection * prev[t - j];
    variance *= 1.0 - reflection * reflection;

    double mean = 0.0;
    for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
    x[t] = mean + std::sqrt(std::max(variance, 0.0)) * z[t];
    std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1, prev.begin());
  }
  return x;
}

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw ParameterError("Hurst exponent must lie in (0, 1), got " + std::to_string(hurst));
  }
}

}  // namespace

TimeSeries gen_gbm(const GbmParams& params) {
  if (!(params.x0 > 0.0)) throw ParameterError("GBM x0 must be positive");
  if (!(params.sigma >= 0.0)) throw ParameterError("GBM sigma must be non-negative");
  if (params.n_steps < 2) throw ParameterError("GBM needs at least 2 steps");

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double drift = params.mu - 0.5 * params.sigma * params.sigma;

  std::vector<double> x(params.n_steps);
  double log_level = std::log(params.x0);
  x[0] = params.x0;
  for (std::size_t t = 1; t < params.n_steps; ++t) {
    log_level += drift + params.sigma * normal(rng);
    x[t] = std::exp(log_level);
  }
  return TimeSeries(std::move(x));
}

std::vector<double> fgn_autocovariance(double hurst, std::size_t max_lag) {
  check_hurst(hurst);
  const double two_h = 2.0 * hurst;
  std::vector<double> gamma(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    const double kd = static_cast<double>(k);
    gamma[k] = 0.5 * (std::pow(kd + 1.0, two_h) - 2.0 * std::pow(kd, two_h) +
                      std::pow(std::abs(kd - 1.0), two_h));
  }
  return gamma;
}

std::vector<double> gen_fgn(double hurst, std::size_t count, std::uint64_t seed,
                            FbmMethod preferred, FbmMethod* used) {
  check_hurst(hurst);
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  if (preferred == FbmMethod::CirculantEmbedding && fgn_circulant(hurst, count, rng, out)) {
    if (used) *used = FbmMethod::CirculantEmbedding;
    return out;
  }
  rng.seed(seed);
  if (used) *used = FbmMethod::Hosking;
  return fgn_hosking(hurst, count, rng);
}

FbmSample gen_fbm(const FbmParams& params, FbmMethod preferred) {
  check_hurst(params.hurst);
  if (params.n_steps < 2) throw ParameterError("FBM needs at least 2 samples");

  FbmSample sample;
  const auto increments =
      gen_fgn(params.hurst, params.n_steps - 1, params.seed, preferred, &sample.method);
  std::vector<double> path(params.n_steps);
  path[0] = 0.0;
  for (std::size_t t = 1; t < params.n_steps; ++t) path[t] = path[t - 1] + increments[t - 1];
  sample.path = TimeSeries(std::move(path));
  return sample;
}

CoeffVector frac_diff_coeffs(double d, std::size_t K) {
  if (!(std::abs(d) < 0.5)) {
    throw ParameterError("differencing parameter must satisfy |d| < 0.5, got " + std::to_string(d));
  }
  CoeffVector c;
  c.values.resize(K + 1);
  c.values[0] = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    c.values[k] = c.values[k - 1] * (kd - 1.0 - d) / kd;
  }
  return c;
}

bool ar_is_stationary(std::span<const double> phi) {
  // Step-down (inverse Levinson) recursion: stationary iff every
  // reflection coefficient has modulus < 1.
  std::vector<double> a(phi.begin(), phi.end());
  for (std::size_t order = a.size(); order > 0; --order) {
    const double k = a[order - 1];
    if (!(std::abs(k) < 1.0)) return false;
    const double denom = 1.0 - k * k;
    std::vector<double> lower(order - 1);
    for (std::size_t i = 0; i + 1 < order; ++i) {
      lower[i] = (a[i] + k * a[order - 2 - i]) / denom;
    }
    a = std::move(lower);
  }
  return true;
}

TimeSeries gen_arfima(const ArfimaParams& params) {
  if (!(std::abs(params.d) < 0.5)) throw ParameterError("ARFIMA requires -0.5 < d < 0.5");
  if (params.truncation_k < 1) throw ParameterError("ARFIMA truncation_k must be >= 1");
  if (!(params.sigma_eps >= 0.0)) throw ParameterError("ARFIMA sigma_eps must be non-negative");
  if (params.n_steps < 1) throw ParameterError("ARFIMA needs at least 1 sample");
  if (!ar_is_stationary(params.phi)) {
    throw ParameterError("ARFIMA AR polynomial has a root on or inside the unit circle");
  }

  const std::size_t p = params.phi.size();
  const std::size_t q = params.theta.size();
  const std::size_t K = params.truncation_k;
  const std::size_t burn = std::max(K, 10 * p);
  const std::size_t total = params.n_steps + burn;

  std::mt19937_64 rng(params.seed);
  auto eps = standard_normals(rng, total + K);
  for (double& e : eps) e *= params.sigma_eps;

  // Fractional integration (1 - L)^{-d} as a truncated MA(inf) filter. The
  // first K innovations are pre-sample history so every output sees K lags.
  std::vector<double> x(total);
  if (params.d == 0.0) {
    std::copy(eps.begin() + static_cast<std::ptrdiff_t>(K), eps.end(), x.begin());
  } else {
    const auto psi = frac_diff_coeffs(-params.d, K);
    const auto conv = fft::convolve(eps, psi.values);
    std::copy(conv.begin() + static_cast<std::ptrdiff_t>(K),
              conv.begin() + static_cast<std::ptrdiff_t>(K + total), x.begin());
  }

  std::vector<double> w(total);
  for (std::size_t t = 0; t < total; ++t) {
    double u = x[t];
    for (std::size_t j = 1; j <= q && j <= t; ++j) u += params.theta[j - 1] * x[t - j];
    for (std::size_t i = 1; i <= p && i <= t; ++i) u += params.phi[i - 1] * w[t - i];
    w[t] = u;
  }

  std::vector<double> y(params.n_steps);
  for (std::size_t t = 0; t < params.n_steps; ++t) y[t] = params.mu + w[burn + t];
  return TimeSeries(std::move(y));
}

TimeSeries integrate(const TimeSeries& series) {
  TimeSeries out;
  out.values.resize(series.size());
  out.timestamps = series.timestamps;
  double acc = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    acc += series.values[t];
    out.values[t] = acc;
  }
  return out;
}

double h_from_d(double d) {
  if (!(std::abs(d) < 0.5)) throw ParameterError("d must satisfy |d| < 0.5");
  return d + 0.5;
}

double d_from_h(double hurst) {
  check_hurst(hurst);
  return hurst - 0.5;
}

double periodogram_slope(std::span<const double> series, FrequencyBand band) {
  const std::size_t n = series.size();
  if (n < 1024) throw ParameterError("periodogram_slope needs at least 1024 samples");
  if (!(band.lo >= 0.0 && band.lo < band.hi && band.hi <= kPi)) {
    throw ParameterError("frequency band must satisfy 0 <= lo < hi <= pi");
  }

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(series.begin(), series.end());
  for (double& v : centered) v -= mean;

  const auto spectrum = fft::forward_real(centered, n);
  const double norm = 1.0 / (2.0 * kPi * static_cast<double>(n));
  std::vector<double> lx, ly;
  for (std::size_t j = 1; 2 * j < n; ++j) {
    const double lambda = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    if (lambda < band.lo || lambda > band.hi) continue;
    const double power = std::norm(spectrum[j]) * norm;
    if (!(power > 0.0)) continue;
    lx.push_back(std::log(lambda));
    ly.push_back(std::log(power));
  }
  if (lx.size() < 8) throw ParameterError("degenerate periodogram fit range");

  const double m = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double xbar = sx / m, ybar = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - xbar) * (lx[i] - xbar);
    sxy += (lx[i] - xbar) * (ly[i] - ybar);
  }
  return sxy / sxx;
}

}  // namespace mace
