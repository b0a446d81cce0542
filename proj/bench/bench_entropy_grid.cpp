// Serial vs OpenMP entropy grid on one FBM horizon set.
//   bench_entropy_grid [scale=0.125] [repeats=3]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "mace/entropy_grid.hpp"
#include "mace/horizons.hpp"
#include "mace/presets.hpp"

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const double scale = argc > 1 ? std::atof(argv[1]) : 0.125;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  if (!(scale > 0.0 && scale <= 1.0) || repeats < 1) {
    std::fprintf(stderr, "usage: bench_entropy_grid [scale in (0,1]] [repeats>=1]\n");
    return 1;
  }

  const auto spec = mace::scaled_horizon_spec(scale);
  const auto series = mace::generate(mace::FbmModel{0.5}, spec.max_length(), 5);
  const auto set = mace::make_horizon_set(series, spec);
  const auto windows = mace::default_window_grid(spec.n_min);
  std::printf("horizons=%zu length=%zu windows=%zu max_threads=%d\n", spec.horizons(), spec.n_min, windows.size(),
              omp_get_max_threads());

  mace::EntropyGrid reference;
  const double serial = best_of(repeats, [&] { reference = mace::compute_entropy_grid_serial(set, windows); });
  std::printf("%-10s %8.3f s\n", "serial", serial);

  std::vector<int> threads{1, 2, 4, omp_get_max_threads()};
  std::sort(threads.begin(), threads.end());
  threads.erase(std::unique(threads.begin(), threads.end()), threads.end());
  bool all_equal = true;
  for (int t : threads) {
    mace::EntropyGrid grid;
    const double secs = best_of(repeats, [&] { grid = mace::compute_entropy_grid(set, windows, {}, t); });
    const bool equal = grid == reference;
    all_equal = all_equal && equal;
    std::printf("omp x%-4d %8.3f s  speedup %.2f  %s\n", t, secs, serial / secs, equal ? "bit-equal" : "MISMATCH");
  }
  return all_equal ? 0 : 2;
}
