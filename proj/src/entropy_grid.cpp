#include "mace/entropy_grid.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

#include "mace/errors.hpp"

namespace mace {
namespace {

void check_windows(const HorizonSet& set, std::span<const std::size_t> windows) {
  for (std::size_t n : windows) {
    if (n < 2 || n > set.target_length) throw ParameterError("window " + std::to_string(n) + " out of range");
  }
}

EntropyGrid empty_grid(const HorizonSet& set, std::span<const std::size_t> windows) {
  EntropyGrid grid;
  grid.windows.assign(windows.begin(), windows.end());
  grid.horizons = set.series.size();
  grid.curves.resize(grid.horizons * grid.windows.size());
  return grid;
}

EntropyCurve cell(const HorizonSet& set, std::size_t m, std::size_t n, PartitionOptions options) {
  return entropy_curve(set.series[m].view(), n, options, static_cast<int>(m + 1));
}

}  // namespace

std::vector<EntropyCurve> EntropyGrid::horizon(std::size_t m) const {
  return {curves.begin() + static_cast<std::ptrdiff_t>(m * windows.size()),
          curves.begin() + static_cast<std::ptrdiff_t>((m + 1) * windows.size())};
}

MdiTable EntropyGrid::mdi_table() const {
  MdiTable table;
  for (std::size_t m = 0; m < horizons; ++m) {
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const auto& c = at(m, w);
      if (!c.empty()) table.set(static_cast<int>(m + 1), windows[w], mdi(c));
    }
  }
  return table;
}

std::vector<std::size_t> default_window_grid(std::size_t length, std::size_t count, std::size_t n_lo) {
  const std::size_t n_hi = length / 20;
  if (count == 0 || n_hi < n_lo) throw ParameterError("series too short for the default window grid");
  std::vector<std::size_t> grid;
  const double a = std::log(static_cast<double>(n_lo));
  const double b = std::log(static_cast<double>(n_hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid.push_back(static_cast<std::size_t>(std::llround(std::exp(a + frac * (b - a)))));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

EntropyGrid compute_entropy_grid_serial(const HorizonSet& set, std::span<const std::size_t> windows,
                                        PartitionOptions options) {
  check_windows(set, windows);
  auto grid = empty_grid(set, windows);
  for (std::size_t m = 0; m < grid.horizons; ++m) {
    for (std::size_t w = 0; w < grid.windows.size(); ++w) {
      grid.curves[m * grid.windows.size() + w] = cell(set, m, grid.windows[w], options);
    }
  }
  return grid;
}

EntropyGrid compute_entropy_grid(const HorizonSet& set, std::span<const std::size_t> windows,
                                 PartitionOptions options, int threads) {
  check_windows(set, windows);
  auto grid = empty_grid(set, windows);
  const auto cells = static_cast<std::ptrdiff_t>(grid.curves.size());
  const std::size_t width = grid.windows.size();
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
  for (std::ptrdiff_t i = 0; i < cells; ++i) {
    try {
      const auto idx = static_cast<std::size_t>(i);
      grid.curves[idx] = cell(set, idx / width, grid.windows[idx % width], options);
    } catch (...) {
#pragma omp critical(mace_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return grid;
}

}  // namespace mace
