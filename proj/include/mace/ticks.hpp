#pragma once

// Tick CSV ingestion. Input files carry a header row naming at least a
// timestamp column (integer epoch milliseconds) and a price column.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mace/time_series.hpp"

namespace mace {

struct TickColumns {
  std::string timestamp = "timestamp";
  std::string price = "price";
};

struct TickData {
  TimeSeries series;  // prices in tick order, timestamps attached
  /// 1-based tick ordinal of the first tick in each calendar month (UTC).
  std::vector<std::size_t> month_starts;

  /// Cumulative tick count at the end of each month, usable as horizon lengths.
  [[nodiscard]] std::vector<std::size_t> cumulative_month_lengths() const;
};

/// Throws DataError (with the offending line number) on decreasing timestamps,
/// non-positive or unparsable prices, missing columns and empty files.
/// `every` > 1 keeps only every `every`-th tick before month boundaries are found.
TickData ingest_ticks(const std::filesystem::path& path, const TickColumns& columns = {}, std::size_t every = 1);

/// Writes `timestamp,price`. The series must carry timestamps.
void write_ticks(const std::filesystem::path& path, const TimeSeries& series);

}  // namespace mace
