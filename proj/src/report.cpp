#include "mace/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "mace/csv_io.hpp"

namespace mace {
namespace {

void emit_curves(std::ostream& out, const std::string& panel, const std::string& set,
                 const std::vector<EntropyCurve>& curves) {
  for (const auto& c : curves) {
    for (const auto& [tau, s] : c.points) {
      out << panel << ',' << set << ',' << c.horizon << ',' << c.n << ',' << tau << ',' << format_double(s) << '\n';
    }
  }
}

void emit_mdi(std::ostream& out, const std::string& panel, const std::string& set, const MdiTable& table) {
  for (const auto& [key, v] : table.values) {
    out << panel << ',' << set << ',' << key.first << ',' << key.second << ",," << format_double(v.total) << '\n';
  }
}

bool has_set(const SweepResult& r, const std::string& label) {
  return std::any_of(r.cells.begin(), r.cells.end(), [&](const SweepCell& c) { return c.label == label && c.ok; });
}

}  // namespace

const std::vector<FigureSpec>& figure_specs() {
  static const std::vector<FigureSpec> specs = [] {
    const std::vector<std::string> arfima1{"a1", "b1", "e1", "f1", "i1", "j1", "k1", "l1", "m1", "n1"};
    const std::vector<std::string> arfima2{"a2", "e2", "i2"};
    std::vector<std::string> fbm_all;
    for (const auto& p : builtin_presets()) {
      if (std::holds_alternative<FbmModel>(p.model)) fbm_all.push_back(p.label);
    }
    return std::vector<FigureSpec>{
        {"fig1.csv", {"gbm"}, true, true, true},
        {"fig2.csv", {"fbm-0.30", "fbm-0.50", "fbm-0.80"}, true, true, false},
        {"fig3.csv", fbm_all, false, false, true},
        {"fig4.csv", arfima1, true, false, false},
        {"fig5.csv", arfima1, false, true, false},
        {"fig6.csv", arfima1, false, false, true},
        {"fig7.csv", arfima2, true, false, false},
        {"fig8.csv", arfima2, false, true, false},
        {"fig9.csv", arfima2, false, false, true},
    };
  }();
  return specs;
}

const std::vector<std::string>& pvalue_sets() {
  static const std::vector<std::string> sets{"b1", "f1", "l1", "a2", "e2", "i2", "n2", "o2"};
  return sets;
}

std::vector<std::string> report_preset_labels() {
  std::set<std::string> wanted(pvalue_sets().begin(), pvalue_sets().end());
  for (const auto& f : figure_specs()) wanted.insert(f.sets.begin(), f.sets.end());
  std::vector<std::string> out;
  for (const auto& p : builtin_presets()) {
    if (wanted.contains(p.label)) out.push_back(p.label);
  }
  return out;
}

void write_report(const SweepResult& r, const std::filesystem::path& dir) {
  for (const auto& fig : figure_specs()) {
    std::ostringstream out;
    out << "panel,set,M,n,tau,value\n";
    for (const auto& set : fig.sets) {
      if (!has_set(r, set)) continue;
      const auto curves = r.median_curves(set);
      if (fig.first_horizon) emit_curves(out, "S_M1", set, curves.front());
      if (fig.last_horizon) emit_curves(out, "S_M" + std::to_string(curves.size()), set, curves.back());
      if (fig.mdi) emit_mdi(out, "I", set, r.median_mdi(set));
    }
    write_text_file(dir / fig.file, out.str());
  }

  // horizon_table adds the fraction of each horizon's raw span that decimation leaves unused
  std::ostringstream spec;
  spec << "M,N,N_M,t_S,t_S_star,discarded\n";
  char cols[64];
  for (std::size_t m = 0; m < r.spec.horizons(); ++m) {
    const double used = static_cast<double>(r.spec.n_min * r.spec.intervals[m]);
    std::snprintf(cols, sizeof cols, "%.4f,%zu,%.4f", r.spec.ratio(m), r.spec.intervals[m],
                  1.0 - used / static_cast<double>(r.spec.boundaries[m]));
    spec << m + 1 << ',' << r.spec.boundaries[m] << ',' << r.spec.n_min << ',' << cols << '\n';
  }
  write_text_file(dir / "horizon_table.csv", spec.str());

  PTable t4;
  t4.horizons = r.ttest.horizons;
  for (const auto& set : pvalue_sets()) {
    if (std::find(r.ttest.sets.begin(), r.ttest.sets.end(), set) == r.ttest.sets.end()) continue;
    t4.sets.push_back(set);
    for (int m : t4.horizons) {
      auto it = r.ttest.cells.find({m, set});
      if (it != r.ttest.cells.end()) t4.cells[{m, set}] = it->second;
    }
  }
  std::ostringstream t4csv;
  write_ttest_csv(t4csv, t4);
  write_text_file(dir / "pvalue_table.csv", t4csv.str());
}

}  // namespace mace
