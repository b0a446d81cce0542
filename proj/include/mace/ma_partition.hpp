#pragma once

// Trailing moving average and the cluster partition it induces: a cluster
// is the stretch of the series between two consecutive crossings of the
// series with its own moving average.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "mace/time_series.hpp"

namespace mace {

/// Series and its trailing moving average on the common index range
/// t = n-1 .. N-1 (0-based), i.e. N - n + 1 samples.
struct AlignedPair {
  std::vector<double> y;
  std::vector<double> ma;
  std::size_t n = 0;
};

struct PartitionOptions {
  /// Count the censored leading/trailing segments as clusters.
  bool include_partial = false;
};

struct ClusterPartition {
  std::vector<std::size_t> lengths;  // tau_j, in samples
  std::size_t n = 0;
  PartitionOptions policy;
  std::size_t crossings = 0;
  std::size_t first_crossing = 0;  // aligned index; meaningful when crossings > 0
  std::size_t last_crossing = 0;
  /// Set when fewer than two crossings were found.
  bool insufficient_crossings = false;

  [[nodiscard]] bool empty() const noexcept { return lengths.empty(); }
};

using ClusterHistogram = std::map<std::size_t, std::size_t>;

AlignedPair moving_average(std::span<const double> y, std::size_t n);
inline AlignedPair moving_average(const TimeSeries& y, std::size_t n) {
  return moving_average(y.view(), n);
}

/// Crossings are indices where sign(y - ma) changes; exact zeros inherit
/// the previous non-zero sign so a touch never splits a cluster.
ClusterPartition find_clusters(const AlignedPair& pair, PartitionOptions options = {});

ClusterHistogram cluster_histogram(const ClusterPartition& partition);

/// moving_average + find_clusters + cluster_histogram in one pass without
/// materializing the aligned pair.
ClusterHistogram cluster_histogram(std::span<const double> y, std::size_t n,
                                   PartitionOptions options = {});

}  // namespace mace
