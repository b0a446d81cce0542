#pragma once

// Preset x realization sweep: generate, build horizons, partition, compute
// entropy curves and MDI, and test each preset against the H = 0.5 benchmark.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "mace/entropy_grid.hpp"
#include "mace/presets.hpp"
#include "mace/stats.hpp"

namespace mace {

struct SweepCell {
  std::string label;
  std::size_t member = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  EntropyGrid grid;
};

struct SweepResult {
  SweepConfig config;
  HorizonSpec spec;
  std::vector<std::size_t> windows;
  std::vector<SweepCell> cells;  // preset-major, then member
  /// Benchmark ensemble-median curves, index [M-1][window].
  std::vector<std::vector<EntropyCurve>> benchmark;
  PTable ttest;
  std::map<std::string, std::string> ttest_errors;  // preset label -> reason
  std::size_t failed = 0;  // failed cells plus failed t-test rows

  /// Ensemble-median curves of one preset, index [M-1][window]. Empty when
  /// every realization failed.
  [[nodiscard]] std::vector<std::vector<EntropyCurve>> median_curves(const std::string& label) const;
  [[nodiscard]] MdiTable median_mdi(const std::string& label) const;
};

/// Seed for realization `member` of preset `label`; stable across runs and
/// independent of preset order.
std::uint64_t cell_seed(std::uint64_t base, const std::string& label, std::size_t member);

/// Horizon spec and window grid implied by a config.
HorizonSpec sweep_horizon_spec(const SweepConfig& config);
std::vector<std::size_t> sweep_windows(const SweepConfig& config, const HorizonSpec& spec);

/// Runs one realization. Throws on any stage error.
EntropyGrid run_cell(const Preset& preset, std::uint64_t seed, const HorizonSpec& spec,
                     const std::vector<std::size_t>& windows, const SweepConfig& config);

/// Cell failures are recorded, never propagated. Configuration errors throw.
SweepResult run_sweep(const SweepConfig& config);

nlohmann::json sweep_manifest(const SweepResult& result);

/// Writes curves/, mdi/, benchmark_curves.csv, horizon_spec.csv, ttest.csv,
/// ttest.json and manifest.json under `dir`.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace mace
