#pragma once

// Thin RAII layer over FFTW. Plans are created under a process-wide lock
// (the FFTW planner is not re-entrant); execution is thread-safe.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mace::fft {

using cplx = std::complex<double>;

/// Unnormalized forward DFT: X[k] = sum_j x[j] exp(-2 pi i jk / N).
std::vector<cplx> forward(std::span<const cplx> x);

/// Forward real-input DFT of x zero-padded to `length`; returns length/2+1 bins.
std::vector<cplx> forward_real(std::span<const double> x, std::size_t length);

/// Inverse of forward_real, normalized so that inverse_real(forward_real(x, L), L) == x.
std::vector<double> inverse_real(std::span<const cplx> spectrum, std::size_t length);

/// Full linear convolution (length a.size() + b.size() - 1) via zero-padded FFTs.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace mace::fft
