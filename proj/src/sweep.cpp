#include "mace/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>

#include "mace/csv_io.hpp"
#include "mace/errors.hpp"

#ifndef MACE_VERSION
#define MACE_VERSION "unknown"
#endif

namespace mace {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr const char* kBenchmarkLabel = "benchmark-fbm-0.50";

struct Job {
  const Preset* preset;
  std::size_t member;
  std::uint64_t seed;
};

std::vector<std::vector<EntropyCurve>> median_by_horizon(const std::vector<const EntropyGrid*>& grids,
                                                         std::size_t horizons) {
  std::vector<std::vector<EntropyCurve>> out;
  if (grids.empty()) return out;
  for (std::size_t m = 0; m < horizons; ++m) {
    std::vector<std::vector<EntropyCurve>> members;
    for (const auto* g : grids) members.push_back(g->horizon(m));
    out.push_back(ensemble_median_curves(members));
  }
  return out;
}

std::string member_file(const std::string& label, std::size_t member) {
  return label + "_r" + std::to_string(member) + ".csv";
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, const std::string& label, std::size_t member) {
  return splitmix64(splitmix64(base ^ fnv1a(label)) + member);
}

HorizonSpec sweep_horizon_spec(const SweepConfig& config) {
  if (config.horizon_lengths.empty()) return scaled_horizon_spec(config.scale);
  return scaled_horizon_spec(config.scale, config.horizon_lengths);
}

std::vector<std::size_t> sweep_windows(const SweepConfig& config, const HorizonSpec& spec) {
  if (config.windows.empty()) return default_window_grid(spec.n_min);
  auto w = config.windows;
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

EntropyGrid run_cell(const Preset& preset, std::uint64_t seed, const HorizonSpec& spec,
                     const std::vector<std::size_t>& windows, const SweepConfig& config) {
  if (!preset.stationary) throw ParameterError("preset " + preset.label + " has a non-stationary AR polynomial");
  auto series = generate(preset.model, spec.max_length(), seed);
  if (config.integrate && std::holds_alternative<ArfimaModel>(preset.model)) series = integrate(series);
  const auto set = make_horizon_set(series, spec, 0, preset.label);
  PartitionOptions options;
  options.include_partial = config.include_partial;
  return compute_entropy_grid_serial(set, windows, options);
}

std::vector<std::vector<EntropyCurve>> SweepResult::median_curves(const std::string& label) const {
  std::vector<const EntropyGrid*> grids;
  for (const auto& c : cells) {
    if (c.label == label && c.ok) grids.push_back(&c.grid);
  }
  return median_by_horizon(grids, spec.horizons());
}

MdiTable SweepResult::median_mdi(const std::string& label) const {
  MdiTable table;
  const auto curves = median_curves(label);
  for (std::size_t m = 0; m < curves.size(); ++m) {
    for (const auto& c : curves[m]) {
      if (!c.empty()) table.set(static_cast<int>(m + 1), c.n, mdi(c));
    }
  }
  return table;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.presets.empty()) throw ParameterError("sweep config has no presets");
  SweepResult result;
  result.config = config;
  result.spec = sweep_horizon_spec(config);
  result.windows = sweep_windows(config, result.spec);

  Preset benchmark{kBenchmarkLabel, FbmModel{0.5}, std::nullopt, true};
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < config.benchmark_ensemble; ++k) {
    jobs.push_back({&benchmark, k, cell_seed(config.benchmark_seed, kBenchmarkLabel, k)});
  }
  for (const auto& p : config.presets) {
    for (std::size_t k = 0; k < config.ensemble; ++k) jobs.push_back({&p, k, cell_seed(config.seed, p.label, k)});
  }

  std::vector<SweepCell> done(jobs.size());
  const int threads = config.jobs > 0 ? config.jobs : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& job = jobs[static_cast<std::size_t>(i)];
    auto& cell = done[static_cast<std::size_t>(i)];
    cell.label = job.preset->label;
    cell.member = job.member;
    cell.seed = job.seed;
    try {
      cell.grid = run_cell(*job.preset, job.seed, result.spec, result.windows, config);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  }

  std::vector<const EntropyGrid*> bench_grids;
  for (std::size_t i = 0; i < config.benchmark_ensemble; ++i) {
    if (!done[i].ok) throw DataError("benchmark realization failed: " + done[i].error);
    bench_grids.push_back(&done[i].grid);
  }
  result.benchmark = median_by_horizon(bench_grids, result.spec.horizons());
  result.cells.assign(std::make_move_iterator(done.begin() + static_cast<std::ptrdiff_t>(config.benchmark_ensemble)),
                      std::make_move_iterator(done.end()));
  for (const auto& c : result.cells) result.failed += c.ok ? 0 : 1;

  ReferenceFamilies ref;
  for (std::size_t m = 0; m < result.benchmark.size(); ++m) ref[static_cast<int>(m + 1)] = result.benchmark[m];
  for (const auto& p : config.presets) {
    const auto curves = result.median_curves(p.label);
    if (curves.empty()) continue;
    CurveFamilies families;
    for (std::size_t m = 0; m < curves.size(); ++m) families[{static_cast<int>(m + 1), p.label}] = curves[m];
    try {
      const auto table = ttest_table(families, ref);
      result.ttest.cells.insert(table.cells.begin(), table.cells.end());
      result.ttest.sets.push_back(p.label);
    } catch (const std::exception& e) {
      result.ttest_errors[p.label] = e.what();
      ++result.failed;
    }
  }
  for (std::size_t m = 1; m <= result.spec.horizons(); ++m) result.ttest.horizons.push_back(static_cast<int>(m));
  return result;
}

nlohmann::json sweep_manifest(const SweepResult& r) {
  nlohmann::json j;
  j["version"] = MACE_VERSION;
  j["config"] = config_to_json(r.config);
  j["scale"] = r.config.scale;
  j["horizon_lengths"] = r.spec.boundaries;
  j["target_length"] = r.spec.n_min;
  j["intervals"] = r.spec.intervals;
  j["windows"] = r.windows;
  j["benchmark"] = {{"model", "fbm"}, {"H", 0.5}, {"seed", r.config.benchmark_seed},
                    {"ensemble", r.config.benchmark_ensemble}};
  auto cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    nlohmann::json cj{{"label", c.label}, {"member", c.member}, {"seed", c.seed}, {"ok", c.ok}};
    if (!c.ok) cj["error"] = c.error;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  if (!r.ttest_errors.empty()) j["ttest_errors"] = r.ttest_errors;
  j["failed"] = r.failed;
  return j;
}

void write_sweep_outputs(const SweepResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& c : r.cells) {
    if (!c.ok) continue;
    std::ostringstream curves, mdi_out;
    write_curves_csv(curves, c.grid.curves);
    write_mdi_csv(mdi_out, c.grid.mdi_table());
    write_text_file(dir / "curves" / member_file(c.label, c.member), curves.str());
    write_text_file(dir / "mdi" / member_file(c.label, c.member), mdi_out.str());
  }
  std::ostringstream bench;
  std::vector<EntropyCurve> flat;
  for (const auto& row : r.benchmark) flat.insert(flat.end(), row.begin(), row.end());
  write_curves_csv(bench, flat);
  write_text_file(dir / "benchmark_curves.csv", bench.str());

  std::ostringstream spec, ttest;
  write_horizon_spec_csv(spec, r.spec);
  write_text_file(dir / "horizon_spec.csv", spec.str());
  write_ttest_csv(ttest, r.ttest);
  write_text_file(dir / "ttest.csv", ttest.str());
  write_text_file(dir / "ttest.json", ttest_json(r.ttest).dump(2) + "\n");
  write_text_file(dir / "manifest.json", sweep_manifest(r).dump(2) + "\n");
}

}  // namespace mace
