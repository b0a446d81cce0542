#pragma once

// The data-parallel hot loop: cluster entropy curves for every
// (horizon M, window n) cell of a horizon set. The OpenMP kernel and the
// serial reference must agree bit-for-bit; each cell is computed by the
// same sequential code and written to its own slot.

#include <cstddef>
#include <span>
#include <vector>

#include "mace/cluster_entropy.hpp"
#include "mace/horizons.hpp"

namespace mace {

struct EntropyGrid {
  std::vector<std::size_t> windows;
  std::size_t horizons = 0;
  std::vector<EntropyCurve> curves;  // [m * windows.size() + w]

  [[nodiscard]] const EntropyCurve& at(std::size_t m, std::size_t w) const {
    return curves[m * windows.size() + w];
  }
  /// Curves of horizon index m (0-based) across all windows.
  [[nodiscard]] std::vector<EntropyCurve> horizon(std::size_t m) const;
  /// I(M, n) for every non-empty cell.
  [[nodiscard]] MdiTable mdi_table() const;

  friend bool operator==(const EntropyGrid&, const EntropyGrid&) = default;
};

/// 20 log-spaced windows from 10 to length / 20, rounded and de-duplicated.
std::vector<std::size_t> default_window_grid(std::size_t length, std::size_t count = 20, std::size_t n_lo = 10);

EntropyGrid compute_entropy_grid_serial(const HorizonSet& set, std::span<const std::size_t> windows,
                                        PartitionOptions options = {});

/// `threads` <= 0 uses the OpenMP default.
EntropyGrid compute_entropy_grid(const HorizonSet& set, std::span<const std::size_t> windows,
                                 PartitionOptions options = {}, int threads = 0);

}  // namespace mace
