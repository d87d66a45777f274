#ifndef LRMEM_SRC_FFT_HPP
#define LRMEM_SRC_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lrmem::fft {

/// Full n-point forward transform of real data:
/// out[j] = sum_s x[s] exp(-2 pi i j s / n), j = 0..n-1.
std::vector<std::complex<double>> forward_real(std::span<const double> x);

/// Half-spectrum (n/2 + 1 bins) forward transform of real data.
std::vector<std::complex<double>> forward_real_half(std::span<const double> x, std::size_t n);

/// Unnormalized inverse of forward_real_half: returns n real samples scaled by n.
std::vector<double> inverse_real_half(std::span<const std::complex<double>> half, std::size_t n);

std::size_t next_pow2(std::size_t n);

}  // namespace lrmem::fft

#endif  // LRMEM_SRC_FFT_HPP
