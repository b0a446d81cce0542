#pragma once

// From cluster histograms to the empirical cluster-length distribution
// P(tau, n), the entropy curve S(tau, n) = -ln P(tau, n), the Market Dynamic
// Index I = sum_tau S(tau, n) with its power-law / linear split at tau = n,
// and the power-law fit P ~ tau^-D recovering D and H = 2 - D.

#include <cstddef>
#include <map>
#include <utility>

#include "mace/ma_partition.hpp"

namespace mace {

struct ClusterPdf {
  std::map<std::size_t, double> probs;
  /// Raw counts behind `probs`; empty for analytically constructed pdfs.
  std::map<std::size_t, std::size_t> counts;
  std::size_t n = 0;
  std::size_t total = 0;

  /// Wraps an explicit distribution (normalized here); no counts attached.
  static ClusterPdf from_probabilities(std::map<std::size_t, double> weights, std::size_t n);
};

struct EntropyCurve {
  std::map<std::size_t, double> points;  // tau -> S(tau, n)
  std::size_t n = 0;
  int horizon = 0;  // M, 0 when not attached to a horizon

  [[nodiscard]] bool empty() const noexcept { return points.empty(); }
  friend bool operator==(const EntropyCurve&, const EntropyCurve&) = default;
};

struct MdiValue {
  double total = 0.0;      // I
  double power_law = 0.0;  // sum over tau < n
  double linear = 0.0;     // sum over tau >= n

  friend bool operator==(const MdiValue&, const MdiValue&) = default;
};

/// I(M, n) keyed by (M, n).
struct MdiTable {
  std::map<std::pair<int, std::size_t>, MdiValue> values;

  void set(int horizon, std::size_t n, MdiValue v) { values[{horizon, n}] = v; }
  [[nodiscard]] const MdiValue& at(int horizon, std::size_t n) const { return values.at({horizon, n}); }
  friend bool operator==(const MdiTable&, const MdiTable&) = default;
};

struct FitRegion {
  std::size_t tau_min = 5;
  /// 0 selects n / 5. Always clipped to tau < n.
  std::size_t tau_max = 0;
};

struct PowerLawFit {
  double D = 0.0;
  double H = 0.0;
  std::size_t bins = 0;
  std::size_t distinct_tau = 0;
};

ClusterPdf cluster_pdf(const ClusterHistogram& hist, std::size_t n);

EntropyCurve entropy_curve(const ClusterPdf& pdf, int horizon = 0);

MdiValue mdi(const EntropyCurve& curve);

/// Weighted least squares of ln P against ln tau on logarithmic bins
/// (bins_per_decade, never narrower than one tau). Each bin's abscissa is
/// the point where a pure power law equals its bin-average density, which
/// makes the fit exact on an exact power law.
PowerLawFit fit_power_law(const ClusterPdf& pdf, FitRegion region = {}, double bins_per_decade = 8.0);

/// Convenience: partition + pdf + curve for one series and window.
EntropyCurve entropy_curve(std::span<const double> y, std::size_t n, PartitionOptions options = {},
                           int horizon = 0);

}  // namespace mace
