#include "mace/cluster_entropy.hpp"

#include <cmath>
#include <vector>

#include "mace/errors.hpp"

namespace mace {

ClusterPdf ClusterPdf::from_probabilities(std::map<std::size_t, double> weights, std::size_t n) {
  double sum = 0.0;
  for (const auto& [tau, w] : weights) {
    if (!(w > 0.0)) throw ParameterError("pdf weights must be positive");
    sum += w;
  }
  if (weights.empty()) throw ParameterError("empty pdf");
  ClusterPdf pdf;
  pdf.n = n;
  for (const auto& [tau, w] : weights) pdf.probs[tau] = w / sum;
  return pdf;
}

ClusterPdf cluster_pdf(const ClusterHistogram& hist, std::size_t n) {
  if (hist.empty()) throw DataError("cluster histogram is empty");
  ClusterPdf pdf;
  pdf.n = n;
  pdf.counts = hist;
  for (const auto& [tau, count] : hist) pdf.total += count;
  const double total = static_cast<double>(pdf.total);
  for (const auto& [tau, count] : hist) pdf.probs[tau] = static_cast<double>(count) / total;
  return pdf;
}

EntropyCurve entropy_curve(const ClusterPdf& pdf, int horizon) {
  if (pdf.probs.empty()) throw DataError("cannot build an entropy curve from an empty pdf");
  EntropyCurve curve;
  curve.n = pdf.n;
  curve.horizon = horizon;
  if (!pdf.counts.empty()) {
    const double total = static_cast<double>(pdf.total);
    for (const auto& [tau, count] : pdf.counts) {
      curve.points[tau] = std::log(total / static_cast<double>(count));
    }
  } else {
    for (const auto& [tau, p] : pdf.probs) curve.points[tau] = std::log(1.0 / p);
  }
  return curve;
}

EntropyCurve entropy_curve(std::span<const double> y, std::size_t n, PartitionOptions options, int horizon) {
  const auto hist = cluster_histogram(y, n, options);
  if (hist.empty()) {
    EntropyCurve curve;
    curve.n = n;
    curve.horizon = horizon;
    return curve;
  }
  return entropy_curve(cluster_pdf(hist, n), horizon);
}

MdiValue mdi(const EntropyCurve& curve) {
  if (curve.empty()) throw DataError("cannot integrate an empty entropy curve");
  MdiValue v;
  for (const auto& [tau, s] : curve.points) {
    if (tau < curve.n) {
      v.power_law += s;
    } else {
      v.linear += s;
    }
  }
  v.total = v.power_law + v.linear;
  return v;
}

PowerLawFit fit_power_law(const ClusterPdf& pdf, FitRegion region, double bins_per_decade) {
  if (!(bins_per_decade > 0.0)) throw ParameterError("bins_per_decade must be positive");
  const std::size_t lo = std::max<std::size_t>(region.tau_min, 1);
  std::size_t hi = region.tau_max == 0 ? pdf.n / 5 : region.tau_max;
  if (pdf.n > 0 && hi >= pdf.n) hi = pdf.n - 1;
  if (hi < lo) throw DataError("power-law fit region is empty");

  std::size_t distinct = 0;
  for (auto it = pdf.probs.lower_bound(lo); it != pdf.probs.end() && it->first <= hi; ++it) ++distinct;
  if (distinct < 5) throw DataError("power-law fit needs at least 5 distinct tau in region");

  // Geometric bin edges [edge_i, edge_{i+1}), at least one tau wide.
  std::vector<std::size_t> edges{lo};
  const double ratio = std::pow(10.0, 1.0 / bins_per_decade);
  double target = static_cast<double>(lo);
  while (edges.back() <= hi) {
    target *= ratio;
    const auto next = std::max(edges.back() + 1, static_cast<std::size_t>(std::floor(target)));
    edges.push_back(std::min(next, hi + 1));
  }

  struct Bin {
    std::size_t begin, end;
    double density, mass;
  };
  std::vector<Bin> bins;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double mass = 0.0;
    for (auto it = pdf.probs.lower_bound(edges[i]); it != pdf.probs.end() && it->first < edges[i + 1]; ++it) {
      mass += it->second;
    }
    if (mass > 0.0) {
      bins.push_back({edges[i], edges[i + 1], mass / static_cast<double>(edges[i + 1] - edges[i]), mass});
    }
  }
  if (bins.size() < 3) throw DataError("power-law fit needs at least 3 populated bins");

  auto effective_tau = [](const Bin& b, double D) {
    if (b.end - b.begin == 1) return static_cast<double>(b.begin);
    double acc = 0.0;
    for (std::size_t t = b.begin; t < b.end; ++t) acc += std::pow(static_cast<double>(t), -D);
    acc /= static_cast<double>(b.end - b.begin);
    return std::pow(acc, -1.0 / D);
  };

  double D = 1.5;
  for (int iter = 0; iter < 200; ++iter) {
    double sw = 0.0, sx = 0.0, sy = 0.0;
    std::vector<double> xs(bins.size()), ys(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) {
      xs[i] = std::log(effective_tau(bins[i], D));
      ys[i] = std::log(bins[i].density);
      sw += bins[i].mass;
      sx += bins[i].mass * xs[i];
      sy += bins[i].mass * ys[i];
    }
    const double xbar = sx / sw, ybar = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < bins.size(); ++i) {
      sxx += bins[i].mass * (xs[i] - xbar) * (xs[i] - xbar);
      sxy += bins[i].mass * (xs[i] - xbar) * (ys[i] - ybar);
    }
    const double next = -sxy / sxx;
    const double updated = next > 1e-3 ? next : 1e-3;
    const bool converged = std::abs(updated - D) < 1e-13;
    D = updated;
    if (converged) break;
  }

  PowerLawFit fit;
  fit.D = D;
  fit.H = 2.0 - D;
  fit.bins = bins.size();
  fit.distinct_tau = distinct;
  return fit;
}

}  // namespace mace
