#pragma once

// Seeded generators for the stochastic models used as test beds for the
// cluster-entropy analysis: geometric Brownian motion, fractional Brownian
// motion and ARFIMA(p, d, q) noise, plus helpers relating H and d.
//
// Every generator is a pure function of its parameter struct: the RNG is
// constructed from `seed` inside the call, so concurrent calls never share
// state and identical parameters give bit-identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mace/time_series.hpp"

namespace mace {

struct GbmParams {
  double mu = 0.0;     // drift per step
  double sigma = 0.0;  // volatility per sqrt(step)
  double x0 = 1.0;
  std::size_t n_steps = 2;
  std::uint64_t seed = 0;
};

struct FbmParams {
  double hurst = 0.5;
  std::size_t n_steps = 2;
  std::uint64_t seed = 0;
};

struct ArfimaParams {
  std::vector<double> phi;    // AR coefficients, Phi(L) = 1 - phi_1 L - ... - phi_p L^p
  double d = 0.0;             // fractional differencing order, |d| < 0.5
  std::vector<double> theta;  // MA coefficients, Theta(L) = 1 + theta_1 L + ... + theta_q L^q
  double sigma_eps = 1.0;
  double mu = 0.0;
  std::size_t n_steps = 2;
  std::uint64_t seed = 0;
  std::size_t truncation_k = 10'000;
};

/// Coefficients of a lag polynomial, index k = 0..K.
struct CoeffVector {
  std::vector<double> values;
  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t k) const noexcept { return values[k]; }
};

enum class FbmMethod {
  CirculantEmbedding,  // Davies-Harte, O(N log N)
  Hosking,             // exact Durbin-Levinson recursion, O(N^2)
};

struct FbmSample {
  TimeSeries path;
  FbmMethod method = FbmMethod::CirculantEmbedding;
};

/// Exact log-normal GBM: X_{t+1} = X_t exp((mu - sigma^2/2) + sigma Z_t), X_0 = x0.
TimeSeries gen_gbm(const GbmParams& params);

/// Autocovariance of unit-variance fractional Gaussian noise at lags 0..max_lag.
std::vector<double> fgn_autocovariance(double hurst, std::size_t max_lag);

/// `count` samples of unit-variance fGn. Falls back to Hosking when the
/// circulant embedding has a materially negative eigenvalue; `used` reports
/// the path taken.
std::vector<double> gen_fgn(double hurst, std::size_t count, std::uint64_t seed,
                            FbmMethod preferred, FbmMethod* used = nullptr);

/// FBM path of n_steps samples with B_H(0) = 0, the running sum of exact fGn.
FbmSample gen_fbm(const FbmParams& params, FbmMethod preferred = FbmMethod::CirculantEmbedding);

/// Coefficients of (1 - L)^d: values[0] = 1, values[k] = values[k-1] (k - 1 - d) / k.
CoeffVector frac_diff_coeffs(double d, std::size_t K);

/// True when 1 - phi_1 z - ... - phi_p z^p has all roots outside the unit circle.
bool ar_is_stationary(std::span<const double> phi);

/// Stationary ARFIMA(p, d, q) noise: innovations are fractionally integrated
/// with a truncated MA(inf) filter, then passed through Theta(L) and the AR
/// recursion; max(truncation_k, 10 p) burn-in samples are discarded.
TimeSeries gen_arfima(const ArfimaParams& params);

/// Running cumulative sum.
TimeSeries integrate(const TimeSeries& series);

double h_from_d(double d);
double d_from_h(double hurst);

/// Frequency band in radians per sample, 0 <= lo < hi <= pi.
struct FrequencyBand {
  double lo = 0.0;
  double hi = 0.1 * 3.14159265358979323846;
};

/// Least-squares slope of log-periodogram against log-frequency over the
/// Fourier frequencies strictly inside (0, pi) that fall in `band`.
double periodogram_slope(std::span<const double> series, FrequencyBand band = {});

}  // namespace mace
