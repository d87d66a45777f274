#include "fft.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace lrmem::fft {

namespace {

// FFTW planning is not thread safe; execution with the new-array interface is.
// Plans are created once per (size, direction) and kept for the process
// lifetime. All buffers come from fftw_malloc so alignment matches the plan.
std::mutex g_plan_mutex;

struct PlanKey {
  std::size_t n;
  bool forward;
  auto operator<=>(const PlanKey&) const = default;
};

fftw_plan get_plan(std::size_t n, bool forward) {
  static std::map<PlanKey, fftw_plan> cache;
  std::lock_guard lock(g_plan_mutex);
  auto it = cache.find({n, forward});
  if (it != cache.end()) return it->second;
  auto* r = static_cast<double*>(fftw_malloc(sizeof(double) * n));
  auto* c = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)));
  const int ni = static_cast<int>(n);
  fftw_plan p = forward ? fftw_plan_dft_r2c_1d(ni, r, c, FFTW_ESTIMATE)
                        : fftw_plan_dft_c2r_1d(ni, c, r, FFTW_ESTIMATE);
  fftw_free(r);
  fftw_free(c);
  cache.emplace(PlanKey{n, forward}, p);
  return p;
}

struct RealBuffer {
  explicit RealBuffer(std::size_t n) : p(static_cast<double*>(fftw_malloc(sizeof(double) * n))) {}
  ~RealBuffer() { fftw_free(p); }
  RealBuffer(const RealBuffer&) = delete;
  RealBuffer& operator=(const RealBuffer&) = delete;
  double* p;
};

struct ComplexBuffer {
  explicit ComplexBuffer(std::size_t n) : p(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {}
  ~ComplexBuffer() { fftw_free(p); }
  ComplexBuffer(const ComplexBuffer&) = delete;
  ComplexBuffer& operator=(const ComplexBuffer&) = delete;
  fftw_complex* p;
};

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> forward_real_half(std::span<const double> x, std::size_t n) {
  RealBuffer in(n);
  ComplexBuffer out(n / 2 + 1);
  const std::size_t len = std::min(n, x.size());
  std::copy_n(x.data(), len, in.p);
  std::fill(in.p + len, in.p + n, 0.0);
  fftw_execute_dft_r2c(get_plan(n, true), in.p, out.p);
  std::vector<std::complex<double>> res(n / 2 + 1);
  for (std::size_t j = 0; j < res.size(); ++j) res[j] = {out.p[j][0], out.p[j][1]};
  return res;
}

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
  const std::size_t n = x.size();
  auto half = forward_real_half(x, n);
  std::vector<std::complex<double>> full(n);
  std::copy(half.begin(), half.end(), full.begin());
  for (std::size_t j = n / 2 + 1; j < n; ++j) full[j] = std::conj(full[n - j]);
  return full;
}

std::vector<double> inverse_real_half(std::span<const std::complex<double>> half, std::size_t n) {
  ComplexBuffer in(n / 2 + 1);
  RealBuffer out(n);
  for (std::size_t j = 0; j < n / 2 + 1; ++j) {
    in.p[j][0] = half[j].real();
    in.p[j][1] = half[j].imag();
  }
  fftw_execute_dft_c2r(get_plan(n, false), in.p, out.p);
  return std::vector<double>(out.p, out.p + n);
}

}  // namespace lrmem::fft
