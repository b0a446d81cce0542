#include "mace/horizons.hpp"

#include <cmath>

#include "mace/errors.hpp"

namespace mace {

HorizonSpec build_horizon_spec(const std::vector<std::size_t>& raw_lengths) {
  if (raw_lengths.empty()) throw ParameterError("horizon lengths must be non-empty");
  if (raw_lengths.front() == 0) throw ParameterError("horizon lengths must be positive");
  for (std::size_t i = 1; i < raw_lengths.size(); ++i) {
    if (raw_lengths[i] <= raw_lengths[i - 1]) {
      throw ParameterError("horizon lengths must be strictly increasing (position " + std::to_string(i + 1) + ")");
    }
  }
  HorizonSpec spec;
  spec.boundaries = raw_lengths;
  spec.n_min = raw_lengths.front();
  spec.intervals.reserve(raw_lengths.size());
  for (std::size_t len : raw_lengths) spec.intervals.push_back(len / spec.n_min);
  return spec;
}

HorizonSpec scaled_horizon_spec(double factor, const std::vector<std::size_t>& raw_lengths) {
  if (!(factor > 0.0 && factor <= 1.0)) throw ParameterError("scale factor must lie in (0, 1]");
  std::vector<std::size_t> scaled;
  scaled.reserve(raw_lengths.size());
  for (std::size_t len : raw_lengths) {
    scaled.push_back(static_cast<std::size_t>(std::floor(static_cast<double>(len) * factor)));
  }
  return build_horizon_spec(scaled);
}

TimeSeries resample_horizon(const TimeSeries& raw, std::size_t interval, std::size_t target_length,
                            std::size_t offset) {
  if (interval < 1) throw ParameterError("sampling interval must be >= 1");
  if (offset >= interval) throw ParameterError("decimation offset must be smaller than the interval");
  if (raw.size() / interval < target_length) {
    throw DataError("series of length " + std::to_string(raw.size()) + " is too short for " +
                    std::to_string(target_length) + " samples at interval " + std::to_string(interval));
  }
  TimeSeries out;
  out.values.reserve(target_length);
  if (raw.has_timestamps()) out.timestamps.reserve(target_length);
  for (std::size_t k = 0; k < target_length; ++k) {
    const std::size_t idx = offset + k * interval;
    out.values.push_back(raw.values[idx]);
    if (raw.has_timestamps()) out.timestamps.push_back(raw.timestamps[idx]);
  }
  return out;
}

HorizonSet make_horizon_set(const TimeSeries& full, const HorizonSpec& spec, std::size_t offset,
                            std::string provenance) {
  if (full.size() < spec.max_length()) {
    throw DataError("series of length " + std::to_string(full.size()) + " is shorter than the largest horizon (" +
                    std::to_string(spec.max_length()) + ")");
  }
  HorizonSet set;
  set.target_length = spec.n_min;
  set.provenance = std::move(provenance);
  set.series.resize(spec.horizons());
  for (std::size_t m = 0; m < spec.horizons(); ++m) {
    // Decimating the length-N_M prefix only ever touches indices < N_M.
    const std::size_t interval = spec.intervals[m];
    if (interval < 1 || offset >= interval || spec.boundaries[m] / interval < spec.n_min) {
      throw DataError("horizon " + std::to_string(m + 1) + " cannot supply " + std::to_string(spec.n_min) +
                      " samples");
    }
    TimeSeries& out = set.series[m];
    out.values.reserve(spec.n_min);
    for (std::size_t k = 0; k < spec.n_min; ++k) {
      const std::size_t idx = offset + k * interval;
      out.values.push_back(full.values[idx]);
      if (full.has_timestamps()) out.timestamps.push_back(full.timestamps[idx]);
    }
  }
  for (const auto& s : set.series) {
    if (s.size() != set.target_length) throw DataError("horizon set lengths diverged");
  }
  return set;
}

}  // namespace mace
