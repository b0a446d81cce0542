#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <memory>
#include <mutex>
#include <new>

namespace mace::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
  void* p = fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1));
  if (p == nullptr) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(static_cast<T*>(p));
}

struct Plan {
  fftw_plan handle = nullptr;
  explicit Plan(fftw_plan p) : handle(p) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(handle);
  }
};

}  // namespace

std::size_t next_pow2(std::size_t n) { return std::bit_ceil(std::max<std::size_t>(n, 1)); }

std::vector<cplx> forward(std::span<const cplx> x) {
  const std::size_t n = x.size();
  auto in = fftw_buffer<fftw_complex>(n);
  auto out = fftw_buffer<fftw_complex>(n);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::memcpy(in.get(), x.data(), sizeof(fftw_complex) * n);
  fftw_execute(plan.handle);
  std::vector<cplx> result(n);
  std::memcpy(static_cast<void*>(result.data()), out.get(), sizeof(fftw_complex) * n);
  return result;
}

std::vector<cplx> forward_real(std::span<const double> x, std::size_t length) {
  const std::size_t bins = length / 2 + 1;
  auto in = fftw_buffer<double>(length);
  auto out = fftw_buffer<fftw_complex>(bins);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_r2c_1d(static_cast<int>(length), in.get(), out.get(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  const std::size_t used = std::min(length, x.size());
  std::memcpy(in.get(), x.data(), sizeof(double) * used);
  std::fill(in.get() + used, in.get() + length, 0.0);
  fftw_execute(plan.handle);
  std::vector<cplx> result(bins);
  std::memcpy(static_cast<void*>(result.data()), out.get(), sizeof(fftw_complex) * bins);
  return result;
}

std::vector<double> inverse_real(std::span<const cplx> spectrum, std::size_t length) {
  const std::size_t bins = length / 2 + 1;
  auto in = fftw_buffer<fftw_complex>(bins);
  auto out = fftw_buffer<double>(length);
  fftw_plan raw;
  {
    std::lock_guard lock(planner_mutex());
    raw = fftw_plan_dft_c2r_1d(static_cast<int>(length), in.get(), out.get(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::memcpy(in.get(), spectrum.data(), sizeof(fftw_complex) * bins);
  fftw_execute(plan.handle);  // c2r destroys its input; `in` is scratch
  std::vector<double> result(out.get(), out.get() + length);
  const double scale = 1.0 / static_cast<double>(length);
  for (double& v : result) v *= scale;
  return result;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t length = next_pow2(full);
  auto fa = forward_real(a, length);
  const auto fb = forward_real(b, length);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  auto out = inverse_real(fa, length);
  out.resize(full);
  return out;
}

}  // namespace mace::fft
