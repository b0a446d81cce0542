#include "mace/presets.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "mace/errors.hpp"

namespace mace {
namespace {

Preset arfima(std::string label, double hurst, double d, std::vector<double> phi, std::vector<double> theta) {
  Preset p{std::move(label), ArfimaModel{std::move(phi), d, std::move(theta)}, hurst, true};
  validate_preset(p);
  return p;
}

Preset fbm(double hurst) {
  char label[16];
  std::snprintf(label, sizeof label, "fbm-%.2f", hurst);
  Preset p{label, FbmModel{hurst}, std::nullopt, true};
  validate_preset(p);
  return p;
}

std::vector<Preset> make_builtin() {
  const std::vector<double> ar3{0.90, 0.90, 0.90};
  const std::vector<double> ma2{0.20, 0.20};
  const std::vector<double> ma3{0.90, 0.90, 0.90};
  std::vector<Preset> all = {
      // ARFIMA(1,d,1)
      arfima("a1", 0.55, 0.05, {0.20}, {0.90}),
      arfima("b1", 0.55, 0.05, {0.90}, {0.20}),
      arfima("c1", 0.60, 0.10, {0.20}, {0.90}),
      arfima("d1", 0.60, 0.10, {0.90}, {0.20}),
      arfima("e1", 0.65, 0.15, {0.20}, {0.90}),
      arfima("f1", 0.65, 0.15, {0.90}, {0.20}),
      arfima("g1", 0.70, 0.20, {0.20}, {0.90}),
      arfima("h1", 0.70, 0.20, {0.90}, {0.20}),
      arfima("i1", 0.75, 0.25, {0.20}, {0.90}),
      arfima("j1", 0.75, 0.25, {0.30}, {0.40}),
      arfima("k1", 0.75, 0.25, {0.30}, {0.85}),
      arfima("l1", 0.75, 0.25, {0.90}, {0.20}),
      arfima("m1", 0.75, 0.25, {0.90}, {0.40}),
      arfima("n1", 0.75, 0.25, {0.90}, {0.85}),
      arfima("o1", 0.80, 0.30, {0.20}, {0.90}),
      arfima("p1", 0.80, 0.30, {0.90}, {0.20}),
      arfima("q1", 0.98, 0.48, {0.30}, {0.40}),
      arfima("r1", 0.98, 0.48, {0.30}, {0.85}),
      arfima("s1", 0.98, 0.48, {0.90}, {0.40}),
      arfima("t1", 0.98, 0.48, {0.90}, {0.85}),
      // ARFIMA(3,d,2) and ARFIMA(1,d,3)
      arfima("a2", 0.55, 0.05, {0.20}, ma3),
      arfima("b2", 0.55, 0.05, ar3, ma2),
      arfima("c2", 0.60, 0.10, {0.20}, ma3),
      arfima("d2", 0.60, 0.10, ar3, ma2),
      arfima("e2", 0.65, 0.15, {0.20}, ma3),
      arfima("f2", 0.65, 0.15, ar3, ma2),
      arfima("g2", 0.70, 0.20, {0.20}, ma3),
      arfima("h2", 0.70, 0.20, ar3, ma2),
      arfima("i2", 0.75, 0.25, {0.20}, ma3),
      arfima("j2", 0.75, 0.25, ar3, ma2),
      arfima("k2", 0.80, 0.30, {0.20}, ma3),
      arfima("l2", 0.80, 0.30, {0.40, 0.16}, {0.90, 0.81, 0.73}),
      arfima("m2", 0.80, 0.30, ar3, ma2),
      arfima("n2", 0.85, 0.35, {0.20}, ma3),
      arfima("o2", 0.98, 0.48, {0.40, 0.16}, {0.90, 0.81, 0.73}),
  };
  Preset gbm{"gbm", GbmModel{1e-7, 5e-4, 1.0}, std::nullopt, true};
  validate_preset(gbm);
  all.push_back(gbm);
  for (double h : {0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.70, 0.80, 0.90}) all.push_back(fbm(h));
  return all;
}

template <typename T>
T value_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

const std::vector<Preset>& builtin_presets() {
  static const std::vector<Preset> all = make_builtin();
  return all;
}

const Preset& builtin_preset(const std::string& label) {
  for (const auto& p : builtin_presets()) {
    if (p.label == label) return p;
  }
  throw ParameterError("unknown preset label '" + label + "'");
}

void validate_preset(Preset& preset) {
  if (preset.label.empty()) throw ParameterError("preset label must be non-empty");
  const auto where = " (preset " + preset.label + ")";
  std::visit(
      [&](auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, GbmModel>) {
          if (!(m.x0 > 0.0)) throw ParameterError("GBM x0 must be positive" + where);
          if (!(m.sigma >= 0.0)) throw ParameterError("GBM sigma must be non-negative" + where);
          preset.stationary = true;
        } else if constexpr (std::is_same_v<M, FbmModel>) {
          if (!(m.hurst > 0.0 && m.hurst < 1.0)) throw ParameterError("FBM H must lie in (0, 1)" + where);
          preset.stationary = true;
        } else {
          if (!(std::abs(m.d) < 0.5)) throw ParameterError("ARFIMA d must satisfy |d| < 0.5" + where);
          if (m.truncation_k < 1) throw ParameterError("ARFIMA truncation_k must be >= 1" + where);
          if (!(m.sigma_eps >= 0.0)) throw ParameterError("ARFIMA sigma_eps must be non-negative" + where);
          if (preset.hurst && std::abs(*preset.hurst - h_from_d(m.d)) > 1e-9) {
            throw ParameterError("tabulated H differs from d + 1/2" + where);
          }
          preset.stationary = ar_is_stationary(m.phi);
        }
      },
      preset.model);
}

std::string model_kind(const ModelParams& model) {
  switch (model.index()) {
    case 0: return "gbm";
    case 1: return "fbm";
    default: return "arfima";
  }
}

TimeSeries generate(const ModelParams& model, std::size_t length, std::uint64_t seed) {
  return std::visit(
      [&](const auto& m) -> TimeSeries {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, GbmModel>) {
          return gen_gbm({m.mu, m.sigma, m.x0, length, seed});
        } else if constexpr (std::is_same_v<M, FbmModel>) {
          return gen_fbm({m.hurst, length, seed}).path;
        } else {
          ArfimaParams p;
          p.phi = m.phi;
          p.d = m.d;
          p.theta = m.theta;
          p.sigma_eps = m.sigma_eps;
          p.mu = m.mu;
          p.n_steps = length;
          p.seed = seed;
          p.truncation_k = m.truncation_k;
          return gen_arfima(p);
        }
      },
      model);
}

nlohmann::json preset_to_json(const Preset& preset) {
  nlohmann::json j;
  j["label"] = preset.label;
  j["model"] = model_kind(preset.model);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, GbmModel>) {
          j["mu"] = m.mu;
          j["sigma"] = m.sigma;
          j["x0"] = m.x0;
        } else if constexpr (std::is_same_v<M, FbmModel>) {
          j["H"] = m.hurst;
        } else {
          if (preset.hurst) j["H"] = *preset.hurst;
          j["d"] = m.d;
          j["phi"] = m.phi;
          j["theta"] = m.theta;
          j["sigma_eps"] = m.sigma_eps;
          j["mu"] = m.mu;
          j["truncation_k"] = m.truncation_k;
        }
      },
      preset.model);
  return j;
}

Preset preset_from_json(const nlohmann::json& j) {
  Preset p;
  try {
    p.label = j.at("label").get<std::string>();
    const auto kind = j.at("model").get<std::string>();
    if (kind == "gbm") {
      p.model = GbmModel{value_or(j, "mu", 0.0), value_or(j, "sigma", 0.0), value_or(j, "x0", 1.0)};
    } else if (kind == "fbm") {
      p.model = FbmModel{j.at("H").get<double>()};
    } else if (kind == "arfima") {
      ArfimaModel m;
      m.d = j.at("d").get<double>();
      m.phi = value_or(j, "phi", std::vector<double>{});
      m.theta = value_or(j, "theta", std::vector<double>{});
      m.sigma_eps = value_or(j, "sigma_eps", 1.0);
      m.mu = value_or(j, "mu", 0.0);
      m.truncation_k = value_or(j, "truncation_k", std::size_t{10'000});
      if (j.contains("H")) p.hurst = j.at("H").get<double>();
      p.model = std::move(m);
    } else {
      throw ParameterError("unknown model kind '" + kind + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed preset: ") + e.what());
  }
  validate_preset(p);
  return p;
}

nlohmann::json config_to_json(const SweepConfig& c) {
  nlohmann::json j;
  j["scale"] = c.scale;
  j["seed"] = c.seed;
  j["ensemble"] = c.ensemble;
  j["benchmark_ensemble"] = c.benchmark_ensemble;
  j["benchmark_seed"] = c.benchmark_seed;
  j["windows"] = c.windows;
  j["horizon_lengths"] = c.horizon_lengths;
  j["integrate"] = c.integrate;
  j["include_partial"] = c.include_partial;
  j["out_dir"] = c.out_dir;
  j["jobs"] = c.jobs;
  j["presets"] = nlohmann::json::array();
  for (const auto& p : c.presets) j["presets"].push_back(preset_to_json(p));
  return j;
}

SweepConfig config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  try {
    c.scale = value_or(j, "scale", c.scale);
    c.seed = value_or(j, "seed", c.seed);
    c.ensemble = value_or(j, "ensemble", c.ensemble);
    c.benchmark_ensemble = value_or(j, "benchmark_ensemble", c.benchmark_ensemble);
    c.benchmark_seed = value_or(j, "benchmark_seed", c.benchmark_seed);
    c.windows = value_or(j, "windows", c.windows);
    c.horizon_lengths = value_or(j, "horizon_lengths", c.horizon_lengths);
    c.integrate = value_or(j, "integrate", c.integrate);
    c.include_partial = value_or(j, "include_partial", c.include_partial);
    c.out_dir = value_or(j, "out_dir", c.out_dir);
    c.jobs = value_or(j, "jobs", c.jobs);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed config: ") + e.what());
  }
  if (c.ensemble < 1) throw ParameterError("ensemble must be >= 1");
  if (c.benchmark_ensemble < 1) throw ParameterError("benchmark_ensemble must be >= 1");
  if (!(c.scale > 0.0 && c.scale <= 1.0)) throw ParameterError("scale must lie in (0, 1]");

  std::set<std::string> seen;
  if (j.contains("presets")) {
    for (const auto& pj : j.at("presets")) {
      auto p = preset_from_json(pj);
      if (!seen.insert(p.label).second) throw ParameterError("duplicate preset label '" + p.label + "'");
      c.presets.push_back(std::move(p));
    }
  }
  return c;
}

SweepConfig load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::vector<Preset> select_presets(const std::vector<Preset>& all, const std::vector<std::string>& labels) {
  std::vector<Preset> out;
  for (const auto& label : labels) {
    auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.label == label; });
    if (it == all.end()) throw ParameterError("unknown preset label '" + label + "'");
    out.push_back(*it);
  }
  return out;
}

}  // namespace mace
