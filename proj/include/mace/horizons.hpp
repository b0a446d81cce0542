#pragma once

// Cumulative horizons M = 1..12: each horizon spans the data from the start
// through the end of period M and is decimated to the length of the
// shortest (first) horizon so that all horizons are compared at equal length.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mace/time_series.hpp"

namespace mace {

/// Cumulative NASDAQ 2018 tick counts, one per month (January .. December).
inline constexpr std::array<std::size_t, 12> kNasdaq2018Lengths = {
    586866, 1117840, 1704706, 2291572, 2906384, 3493250,
    4069315, 4712062, 5243029, 5885781, 6461845, 6982017};

struct HorizonSpec {
  std::vector<std::size_t> boundaries;  // cumulative raw length N for M = 1..K
  std::size_t n_min = 0;                // shortest raw length = common target length
  std::vector<std::size_t> intervals;   // t_S* = floor(N / n_min)

  [[nodiscard]] std::size_t horizons() const noexcept { return boundaries.size(); }
  /// Unrounded ratio t_S = N / n_min.
  [[nodiscard]] double ratio(std::size_t m) const { return static_cast<double>(boundaries[m]) / static_cast<double>(n_min); }
  [[nodiscard]] std::size_t max_length() const { return boundaries.empty() ? 0 : boundaries.back(); }
};

struct HorizonSet {
  std::vector<TimeSeries> series;  // index M-1
  std::size_t target_length = 0;
  std::string provenance;
};

HorizonSpec build_horizon_spec(const std::vector<std::size_t>& raw_lengths);

/// Scales every length by `factor` (floored), e.g. 1/8 for desk-scale runs.
HorizonSpec scaled_horizon_spec(double factor,
                                const std::vector<std::size_t>& raw_lengths = {kNasdaq2018Lengths.begin(),
                                                                               kNasdaq2018Lengths.end()});

/// Every `interval`-th sample starting at `offset`, truncated to target_length.
TimeSeries resample_horizon(const TimeSeries& raw, std::size_t interval, std::size_t target_length,
                            std::size_t offset = 0);

HorizonSet make_horizon_set(const TimeSeries& full, const HorizonSpec& spec, std::size_t offset = 0,
                            std::string provenance = {});

}  // namespace mace
