#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mace {

/// Ordered real-valued samples, optionally carrying epoch-millisecond
/// timestamps (either empty or one per sample).
struct TimeSeries {
  std::vector<double> values;
  std::vector<std::int64_t> timestamps;

  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> v) : values(std::move(v)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] bool empty() const noexcept { return values.empty(); }
  [[nodiscard]] bool has_timestamps() const noexcept { return !timestamps.empty(); }
  [[nodiscard]] std::span<const double> view() const noexcept { return values; }
  double operator[](std::size_t i) const noexcept { return values[i]; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

}  // namespace mace
