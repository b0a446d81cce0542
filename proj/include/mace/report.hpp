#pragma once

// Plot-data emission for the figure set. Every figN.csv shares the tidy
// schema `panel,set,M,n,tau,value`; MDI rows leave tau empty.

#include <filesystem>
#include <string>
#include <vector>

#include "mace/sweep.hpp"

namespace mace {

struct FigureSpec {
  std::string file;                // e.g. "fig4.csv"
  std::vector<std::string> sets;   // preset labels
  bool first_horizon = false;      // S(tau, n) at M = 1
  bool last_horizon = false;       // S(tau, n) at the last horizon
  bool mdi = false;                // I(M, n) for every M
};

const std::vector<FigureSpec>& figure_specs();
/// Columns of the p-value table.
const std::vector<std::string>& pvalue_sets();

/// Every preset label needed by the figures and the p-value table, built-in order.
std::vector<std::string> report_preset_labels();

/// Writes fig1.csv .. fig9.csv, horizon_table.csv and pvalue_table.csv under `dir`.
/// Sets absent from the sweep (failed or not run) are skipped.
void write_report(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace mace
