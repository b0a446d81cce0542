// mace: command-line front end for series generation, horizon building,
// cluster entropy, MDI, paired t-tests, sweeps and figure data.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mace/cluster_entropy.hpp"
#include "mace/csv_io.hpp"
#include "mace/entropy_grid.hpp"
#include "mace/errors.hpp"
#include "mace/horizons.hpp"
#include "mace/presets.hpp"
#include "mace/report.hpp"
#include "mace/series_gen.hpp"
#include "mace/stats.hpp"
#include "mace/sweep.hpp"
#include "mace/ticks.hpp"

namespace fs = std::filesystem;
using namespace mace;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kPartial = 3;

struct Globals {
  std::uint64_t seed = 20180101;
  double scale = 1.0 / 8.0;
  std::string out;
  int jobs = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* scale_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;

  [[nodiscard]] fs::path out_or(const std::string& fallback) const { return out.empty() ? fs::path(fallback) : fs::path(out); }
};

void write_to(const fs::path& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string horizon_file(std::size_t m) {
  char name[32];
  std::snprintf(name, sizeof name, "horizon_%02zu.csv", m + 1);
  return name;
}

// generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string preset;
  std::string model = "fbm";
  std::size_t length = 0;
  double hurst = 0.5;
  std::optional<double> d;
  std::vector<double> phi;
  std::vector<double> theta;
  double mu = 0.0;
  double sigma = 5e-4;
  double x0 = 1.0;
  double sigma_eps = 1.0;
  bool integrate = false;
  std::string format = "csv";
};

int run_generate(const GenerateArgs& a, const Globals& g) {
  ModelParams model;
  if (!a.preset.empty()) {
    const auto& p = builtin_preset(a.preset);
    if (!p.stationary) throw ParameterError("preset " + p.label + " has a non-stationary AR polynomial");
    model = p.model;
  } else if (a.model == "gbm") {
    model = GbmModel{a.mu, a.sigma, a.x0};
  } else if (a.model == "fbm") {
    model = FbmModel{a.hurst};
  } else {
    ArfimaModel m;
    m.d = a.d.value_or(d_from_h(a.hurst));
    m.phi = a.phi;
    m.theta = a.theta;
    m.sigma_eps = a.sigma_eps;
    m.mu = a.mu;
    Preset check{"cli", m, std::nullopt, true};
    validate_preset(check);
    if (!check.stationary) throw ParameterError("AR polynomial is not stationary");
    model = m;
  }
  const std::size_t length = a.length > 0 ? a.length : scaled_horizon_spec(g.scale).max_length();
  auto series = generate(model, length, g.seed);
  if (a.integrate) series = integrate(series);
  const auto out = g.out_or(a.format == "bin" ? "series.bin" : "series.csv");
  if (a.format == "bin") {
    write_series_binary(out, series);
  } else {
    write_series_csv(out, series);
  }
  std::cerr << "wrote " << series.size() << " samples to " << out.string() << "\n";
  return kOk;
}

// horizons ------------------------------------------------------------------

struct HorizonsArgs {
  std::string input;
  std::string ticks;
  std::string ts_col = "timestamp";
  std::string px_col = "price";
  std::size_t every = 1;
  std::vector<std::size_t> lengths;
  std::size_t offset = 0;
};

int run_horizons(const HorizonsArgs& a, const Globals& g) {
  if (a.input.empty() == a.ticks.empty()) throw ParameterError("give exactly one of --input or --ticks");
  TimeSeries full;
  HorizonSpec spec;
  std::string provenance;
  if (!a.ticks.empty()) {
    auto data = ingest_ticks(a.ticks, {a.ts_col, a.px_col}, a.every);
    spec = build_horizon_spec(data.cumulative_month_lengths());
    full = std::move(data.series);
    provenance = "ticks:" + a.ticks;
  } else {
    full = read_series(a.input);
    spec = a.lengths.empty() ? scaled_horizon_spec(g.scale) : scaled_horizon_spec(g.scale, a.lengths);
    provenance = "series:" + a.input;
  }
  if (full.size() < spec.max_length()) {
    throw DataError("input has " + std::to_string(full.size()) + " samples, horizons need " +
                    std::to_string(spec.max_length()));
  }
  const auto set = make_horizon_set(full, spec, a.offset, provenance);
  const auto dir = g.out_or("horizons");
  std::ostringstream csv;
  write_horizon_spec_csv(csv, spec);
  write_text_file(dir / "horizon_spec.csv", csv.str());
  for (std::size_t m = 0; m < set.series.size(); ++m) write_series_csv(dir / horizon_file(m), set.series[m]);
  std::cout << csv.str();
  return kOk;
}

// entropy -------------------------------------------------------------------

struct EntropyArgs {
  std::string input;
  std::vector<std::size_t> windows;
  bool horizons = false;
  bool include_partial = false;
  std::string partitions;
  std::string json;
};

int run_entropy(const EntropyArgs& a, const Globals& g) {
  const auto series = read_series(a.input);
  PartitionOptions options;
  options.include_partial = a.include_partial;
  std::vector<EntropyCurve> curves;
  if (a.horizons) {
    const auto spec = scaled_horizon_spec(g.scale);
    if (series.size() < spec.max_length()) {
      throw DataError("input has " + std::to_string(series.size()) + " samples, horizons need " +
                      std::to_string(spec.max_length()));
    }
    const auto set = make_horizon_set(series, spec, 0, a.input);
    const auto windows = a.windows.empty() ? default_window_grid(spec.n_min) : a.windows;
    curves = compute_entropy_grid(set, windows, options, g.jobs).curves;
  } else {
    const auto windows = a.windows.empty() ? default_window_grid(series.size()) : a.windows;
    for (std::size_t n : windows) {
      if (!a.partitions.empty()) {
        std::ostringstream part;
        write_partition_csv(part, cluster_histogram(series.view(), n, options));
        write_text_file(fs::path(a.partitions) / ("partition_n" + std::to_string(n) + ".csv"), part.str());
      }
      curves.push_back(entropy_curve(series.view(), n, options));
    }
  }
  std::ostringstream csv;
  write_curves_csv(csv, curves);
  write_to(g.out_or("-"), csv.str());
  if (!a.json.empty()) write_text_file(a.json, curves_json(curves).dump(2) + "\n");
  return kOk;
}

// mdi -----------------------------------------------------------------------

struct MdiArgs {
  std::string curves;
  std::string fit;
  std::size_t tau_min = 5;
  std::size_t tau_max = 0;
};

int run_mdi(const MdiArgs& a, const Globals& g) {
  const auto curves = read_curves_csv(a.curves);
  MdiTable table;
  for (const auto& c : curves) table.set(c.horizon, c.n, mdi(c));
  std::ostringstream csv;
  write_mdi_csv(csv, table);
  write_to(g.out_or("-"), csv.str());
  if (!a.fit.empty()) {
    std::ostringstream fit;
    fit << "M,n,D,H,bins\n";
    std::size_t skipped = 0;
    for (const auto& c : curves) {
      std::map<std::size_t, double> weights;
      for (const auto& [tau, s] : c.points) weights[tau] = std::exp(-s);
      try {
        const auto f = fit_power_law(ClusterPdf::from_probabilities(weights, c.n), {a.tau_min, a.tau_max});
        fit << c.horizon << ',' << c.n << ',' << format_double(f.D) << ',' << format_double(f.H) << ',' << f.bins << '\n';
      } catch (const DataError&) {
        ++skipped;
      }
    }
    if (skipped > 0) std::cerr << "fit skipped for " << skipped << " curves with too few cluster lengths in range\n";
    write_to(a.fit, fit.str());
  }
  return kOk;
}

// ttest ---------------------------------------------------------------------

struct TtestArgs {
  std::string curves;
  std::string reference;
  std::string set = "set";
  std::string json;
};

int run_ttest(const TtestArgs& a, const Globals& g) {
  CurveFamilies families;
  for (auto& c : read_curves_csv(a.curves)) families[{c.horizon, a.set}].push_back(std::move(c));
  ReferenceFamilies ref;
  for (auto& c : read_curves_csv(a.reference)) ref[c.horizon].push_back(std::move(c));
  const auto table = ttest_table(families, ref);
  std::ostringstream csv;
  write_ttest_csv(csv, table);
  write_to(g.out_or("-"), csv.str());
  if (!a.json.empty()) write_text_file(a.json, ttest_json(table).dump(2) + "\n");
  return kOk;
}

// sweep / report -----------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::vector<std::string> presets;
  std::optional<std::size_t> ensemble;
  std::optional<std::size_t> benchmark_ensemble;
  std::vector<std::size_t> windows;
  bool include_partial = false;
  bool no_integrate = false;
};

SweepConfig build_config(const SweepArgs& a, const Globals& g, const std::vector<std::string>& default_labels) {
  SweepConfig config;
  if (!a.config.empty()) config = load_presets(a.config);
  if (!a.presets.empty()) {
    config.presets = select_presets(config.presets.empty() ? builtin_presets() : config.presets, a.presets);
  } else if (config.presets.empty()) {
    config.presets = select_presets(builtin_presets(), default_labels);
  }
  if (g.seed_opt->count() > 0) config.seed = g.seed;
  if (g.scale_opt->count() > 0) config.scale = g.scale;
  if (g.jobs_opt->count() > 0) config.jobs = g.jobs;
  if (g.out_opt->count() > 0) config.out_dir = g.out;
  if (a.ensemble) config.ensemble = *a.ensemble;
  if (a.benchmark_ensemble) config.benchmark_ensemble = *a.benchmark_ensemble;
  if (!a.windows.empty()) config.windows = a.windows;
  if (a.include_partial) config.include_partial = true;
  if (a.no_integrate) config.integrate = false;
  if (config.ensemble < 1 || config.benchmark_ensemble < 1) throw ParameterError("ensemble sizes must be >= 1");
  return config;
}

int report_failures(const SweepResult& r) {
  for (const auto& c : r.cells) {
    if (!c.ok) std::cerr << "cell " << c.label << " r" << c.member << " failed: " << c.error << "\n";
  }
  for (const auto& [label, why] : r.ttest_errors) std::cerr << "t-test for " << label << " failed: " << why << "\n";
  return r.failed > 0 ? kPartial : kOk;
}

int run_sweep_cmd(const SweepArgs& a, const Globals& g) {
  std::vector<std::string> all;
  for (const auto& p : builtin_presets()) all.push_back(p.label);
  const auto config = build_config(a, g, all);
  const auto result = run_sweep(config);
  write_sweep_outputs(result, config.out_dir);
  std::cerr << "sweep: " << result.cells.size() << " cells, " << result.failed << " failed, outputs in "
            << config.out_dir << "\n";
  return report_failures(result);
}

int run_report_cmd(const SweepArgs& a, const Globals& g) {
  auto config = build_config(a, g, report_preset_labels());
  const auto result = run_sweep(config);
  const fs::path dir = config.out_dir;
  write_sweep_outputs(result, dir / "sweep");
  write_report(result, dir);
  std::cerr << "report: figures in " << dir.string() << "\n";
  return report_failures(result);
}

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
  cmd->add_option("--config", a.config, "JSON sweep config")->check(CLI::ExistingFile);
  cmd->add_option("--presets", a.presets, "preset labels (default: all, or the report set)")->delimiter(',');
  cmd->add_option("--ensemble", a.ensemble, "realizations per preset");
  cmd->add_option("--benchmark-ensemble", a.benchmark_ensemble, "FBM H=0.5 benchmark realizations");
  cmd->add_option("--windows", a.windows, "moving-average windows")->delimiter(',');
  cmd->add_flag("--include-partial", a.include_partial, "keep boundary clusters");
  cmd->add_flag("--no-integrate", a.no_integrate, "analyse ARFIMA noise instead of its cumulative walk");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moving-average cluster entropy toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(MACE_VERSION));
  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  g.scale_opt = app.add_option("--scale", g.scale, "desk scale factor on horizon lengths")
                    ->check(CLI::Range(1e-9, 1.0))
                    ->capture_default_str();
  g.out_opt = app.add_option("--out", g.out, "output file or directory");
  g.jobs_opt = app.add_option("--jobs", g.jobs, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "generate a GBM, FBM or ARFIMA series");
  generate_cmd->add_option("--preset", gen.preset, "built-in preset label");
  generate_cmd->add_option("--model", gen.model, "gbm, fbm or arfima")->check(CLI::IsMember({"gbm", "fbm", "arfima"}));
  generate_cmd->add_option("--length", gen.length, "samples (default: largest desk-scale horizon)");
  generate_cmd->add_option("--hurst", gen.hurst, "Hurst exponent (FBM; ARFIMA when --d is absent)");
  generate_cmd->add_option("--d", gen.d, "ARFIMA differencing parameter");
  generate_cmd->add_option("--phi", gen.phi, "AR coefficients")->delimiter(',');
  generate_cmd->add_option("--theta", gen.theta, "MA coefficients")->delimiter(',');
  generate_cmd->add_option("--mu", gen.mu, "GBM drift or ARFIMA mean");
  generate_cmd->add_option("--sigma", gen.sigma, "GBM volatility");
  generate_cmd->add_option("--x0", gen.x0, "GBM initial price");
  generate_cmd->add_option("--sigma-eps", gen.sigma_eps, "ARFIMA innovation std");
  generate_cmd->add_flag("--integrate", gen.integrate, "emit the cumulative sum");
  generate_cmd->add_option("--format", gen.format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));

  HorizonsArgs hz;
  auto* horizons_cmd = app.add_subcommand("horizons", "build the twelve equal-length horizon series");
  horizons_cmd->add_option("--input", hz.input, "series file (.csv or .bin)")->check(CLI::ExistingFile);
  horizons_cmd->add_option("--ticks", hz.ticks, "tick CSV; monthly boundaries give the horizon lengths")
      ->check(CLI::ExistingFile);
  horizons_cmd->add_option("--timestamp-column", hz.ts_col);
  horizons_cmd->add_option("--price-column", hz.px_col);
  horizons_cmd->add_option("--every", hz.every, "keep every k-th tick before building horizons");
  horizons_cmd->add_option("--lengths", hz.lengths, "cumulative raw lengths before scaling")->delimiter(',');
  horizons_cmd->add_option("--offset", hz.offset, "decimation offset");

  EntropyArgs en;
  auto* entropy_cmd = app.add_subcommand("entropy", "cluster entropy curves S(tau, n)");
  entropy_cmd->add_option("--input", en.input, "series file")->required()->check(CLI::ExistingFile);
  entropy_cmd->add_option("--windows", en.windows, "moving-average windows")->delimiter(',');
  entropy_cmd->add_flag("--horizons", en.horizons, "split the input into horizons first");
  entropy_cmd->add_flag("--include-partial", en.include_partial, "keep boundary clusters");
  entropy_cmd->add_option("--partitions", en.partitions, "directory for tau,count dumps");
  entropy_cmd->add_option("--json", en.json, "also write a JSON report");

  MdiArgs md;
  auto* mdi_cmd = app.add_subcommand("mdi", "market dynamic index from a curves file");
  mdi_cmd->add_option("--curves", md.curves, "M,n,tau,S file")->required()->check(CLI::ExistingFile);
  mdi_cmd->add_option("--fit", md.fit, "write power-law fits (M,n,D,H,bins) here");
  mdi_cmd->add_option("--tau-min", md.tau_min);
  mdi_cmd->add_option("--tau-max", md.tau_max, "0: n/5");

  TtestArgs tt;
  auto* ttest_cmd = app.add_subcommand("ttest", "paired t-test of curves against reference curves");
  ttest_cmd->add_option("--curves", tt.curves)->required()->check(CLI::ExistingFile);
  ttest_cmd->add_option("--reference", tt.reference)->required()->check(CLI::ExistingFile);
  ttest_cmd->add_option("--set", tt.set, "label for the tested set");
  ttest_cmd->add_option("--json", tt.json, "also write t, dof and pair counts as JSON");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "run presets over horizons and windows");
  add_sweep_options(sweep_cmd, sw);
  SweepArgs rp;
  auto* report_cmd = app.add_subcommand("report", "sweep the figure presets and write fig1.csv .. fig9.csv");
  add_sweep_options(report_cmd, rp);

  for (auto* cmd : {generate_cmd, horizons_cmd, entropy_cmd, mdi_cmd, ttest_cmd, sweep_cmd, report_cmd}) {
    cmd->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (generate_cmd->parsed()) return run_generate(gen, g);
    if (horizons_cmd->parsed()) return run_horizons(hz, g);
    if (entropy_cmd->parsed()) return run_entropy(en, g);
    if (mdi_cmd->parsed()) return run_mdi(md, g);
    if (ttest_cmd->parsed()) return run_ttest(tt, g);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sw, g);
    if (report_cmd->parsed()) return run_report_cmd(rp, g);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
