#pragma once

// Model presets and sweep configuration. The built-in preset tables carry
// the ARFIMA(1,d,1) grid (labels a1..t1) and the ARFIMA(3,d,2)/(1,d,3) grid
// (labels a2..o2), plus the GBM and FBM reference models.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "mace/series_gen.hpp"

namespace mace {

struct GbmModel {
  double mu = 0.0;
  double sigma = 0.0;
  double x0 = 1.0;
};

struct FbmModel {
  double hurst = 0.5;
};

struct ArfimaModel {
  std::vector<double> phi;
  double d = 0.0;
  std::vector<double> theta;
  double sigma_eps = 1.0;
  double mu = 0.0;
  std::size_t truncation_k = 10'000;
};

using ModelParams = std::variant<GbmModel, FbmModel, ArfimaModel>;

struct Preset {
  std::string label;
  ModelParams model;
  /// Tabulated Hurst exponent (ARFIMA rows); must equal d + 1/2 when present.
  std::optional<double> hurst;
  /// AR polynomial is stationary. Non-stationary rows load but cannot generate.
  bool stationary = true;
};

struct SweepConfig {
  std::vector<Preset> presets;
  std::vector<std::size_t> windows;  // empty: default_window_grid
  double scale = 1.0 / 8.0;
  std::vector<std::size_t> horizon_lengths;  // empty: cumulative NASDAQ 2018 lengths
  std::uint64_t seed = 20180101;
  std::size_t ensemble = 1;        // realizations per preset
  std::size_t benchmark_ensemble = 20;
  std::uint64_t benchmark_seed = 5;
  bool integrate = true;  // cumulate ARFIMA noise into a walk before analysis
  bool include_partial = false;
  std::string out_dir = "mace_out";
  int jobs = 0;
};

const std::vector<Preset>& builtin_presets();
const Preset& builtin_preset(const std::string& label);

/// Throws ParameterError on invariant violations other than AR stationarity,
/// which is recorded in Preset::stationary.
void validate_preset(Preset& preset);

std::string model_kind(const ModelParams& model);

/// Generates `length` samples of the preset's model. ARFIMA output is noise;
/// the caller decides whether to integrate it.
TimeSeries generate(const ModelParams& model, std::size_t length, std::uint64_t seed);

nlohmann::json preset_to_json(const Preset& preset);
Preset preset_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SweepConfig& config);
SweepConfig config_from_json(const nlohmann::json& j);

/// Loads a JSON config. Label collisions and invariant violations throw.
SweepConfig load_presets(const std::filesystem::path& path);

/// Keeps only the listed labels, in the listed order.
std::vector<Preset> select_presets(const std::vector<Preset>& all, const std::vector<std::string>& labels);

}  // namespace mace
