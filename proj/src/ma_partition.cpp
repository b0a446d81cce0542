#include "mace/ma_partition.hpp"

#include <cmath>
#include <string>

#include "mace/errors.hpp"

namespace mace {
namespace {

// Neumaier-compensated running sum.
class RollingSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_window(std::size_t length, std::size_t n) {
  if (n < 2 || n > length) {
    throw ParameterError("moving-average window " + std::to_string(n) +
                         " outside [2, " + std::to_string(length) + "]");
  }
}

int sign_of(double v) noexcept { return (v > 0.0) - (v < 0.0); }

// Streams the sign sequence of y - ma and accumulates crossings.
class CrossingScanner {
 public:
  explicit CrossingScanner(PartitionOptions options) : options_(options) {}

  template <typename Emit>
  void push(double diff, Emit&& emit) {
    const int s = sign_of(diff);
    const std::size_t index = count_++;
    if (s == 0 || s == current_) return;
    if (current_ != 0) {
      // sign flip at `index`
      if (crossings_ == 0) {
        first_ = index;
        if (options_.include_partial) emit(index);
      } else {
        emit(index - last_);
      }
      last_ = index;
      ++crossings_;
    }
    current_ = s;
  }

  template <typename Emit>
  void finish(Emit&& emit) {
    if (!options_.include_partial) return;
    if (crossings_ == 0) {
      if (count_ > 0) emit(count_);
    } else if (count_ > last_) {
      emit(count_ - last_);
    }
  }

  [[nodiscard]] std::size_t crossings() const noexcept { return crossings_; }
  [[nodiscard]] std::size_t first() const noexcept { return first_; }
  [[nodiscard]] std::size_t last() const noexcept { return last_; }

 private:
  PartitionOptions options_;
  int current_ = 0;
  std::size_t count_ = 0;
  std::size_t crossings_ = 0;
  std::size_t first_ = 0;
  std::size_t last_ = 0;
};

template <typename OnDiff>
void scan_differences(std::span<const double> y, std::size_t n, OnDiff&& on_diff) {
  RollingSum window;
  for (std::size_t t = 0; t + 1 < n; ++t) window.add(y[t]);
  const double width = static_cast<double>(n);
  for (std::size_t t = n - 1; t < y.size(); ++t) {
    window.add(y[t]);
    const double ma = window.value() / width;
    on_diff(y[t], ma);
    window.add(-y[t + 1 - n]);
  }
}

}  // namespace

AlignedPair moving_average(std::span<const double> y, std::size_t n) {
  check_window(y.size(), n);
  AlignedPair pair;
  pair.n = n;
  pair.y.reserve(y.size() - n + 1);
  pair.ma.reserve(y.size() - n + 1);
  scan_differences(y, n, [&](double value, double ma) {
    pair.y.push_back(value);
    pair.ma.push_back(ma);
  });
  return pair;
}

ClusterPartition find_clusters(const AlignedPair& pair, PartitionOptions options) {
  if (pair.y.size() != pair.ma.size()) throw ParameterError("aligned pair has mismatched lengths");
  if (pair.n < 2) throw ParameterError("aligned pair window must be >= 2");

  ClusterPartition partition;
  partition.n = pair.n;
  partition.policy = options;
  CrossingScanner scanner(options);
  auto emit = [&](std::size_t tau) { partition.lengths.push_back(tau); };
  for (std::size_t t = 0; t < pair.y.size(); ++t) scanner.push(pair.y[t] - pair.ma[t], emit);
  scanner.finish(emit);

  partition.crossings = scanner.crossings();
  partition.first_crossing = scanner.first();
  partition.last_crossing = scanner.last();
  partition.insufficient_crossings = scanner.crossings() < 2;
  if (partition.insufficient_crossings && !options.include_partial) partition.lengths.clear();
  return partition;
}

ClusterHistogram cluster_histogram(const ClusterPartition& partition) {
  ClusterHistogram hist;
  for (std::size_t tau : partition.lengths) ++hist[tau];
  return hist;
}

ClusterHistogram cluster_histogram(std::span<const double> y, std::size_t n, PartitionOptions options) {
  check_window(y.size(), n);
  ClusterHistogram hist;
  CrossingScanner scanner(options);
  auto emit = [&](std::size_t tau) { ++hist[tau]; };
  scan_differences(y, n, [&](double value, double ma) { scanner.push(value - ma, emit); });
  scanner.finish(emit);
  if (scanner.crossings() < 2 && !options.include_partial) hist.clear();
  return hist;
}

}  // namespace mace
