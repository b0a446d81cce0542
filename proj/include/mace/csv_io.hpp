#pragma once

// Tidy CSV and binary serialization of series and results.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "mace/cluster_entropy.hpp"
#include "mace/horizons.hpp"
#include "mace/stats.hpp"
#include "mace/time_series.hpp"

namespace mace {

/// Shortest decimal representation that round-trips.
std::string format_double(double v);

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries read_series_csv(const std::filesystem::path& path);
void write_series_binary(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries read_series_binary(const std::filesystem::path& path);
/// Dispatches on extension: `.bin` is raw float64, anything else CSV.
TimeSeries read_series(const std::filesystem::path& path);

void write_partition_csv(std::ostream& out, const ClusterHistogram& hist);

void write_curves_csv(std::ostream& out, std::span<const EntropyCurve> curves);
std::vector<EntropyCurve> read_curves_csv(const std::filesystem::path& path);
void write_mdi_csv(std::ostream& out, const MdiTable& table);
nlohmann::json curves_json(std::span<const EntropyCurve> curves);
nlohmann::json mdi_json(const MdiTable& table);

void write_horizon_spec_csv(std::ostream& out, const HorizonSpec& spec);

void write_ttest_csv(std::ostream& out, const PTable& table);
nlohmann::json ttest_json(const PTable& table);

/// Creates parent directories and writes `content` atomically enough for a
/// single writer.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mace
