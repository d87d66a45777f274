#ifndef LRMEM_SIMULATOR_HPP
#define LRMEM_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrmem/core.hpp"

namespace lrmem {

/// Gaussian VARFIMA(0,d,0) generated by truncating the moving-average
/// representation X_t^(i) = sum_{k<K} psi_k(d_i) eps_{t-k}^(i).
struct Varfima0Spec {
  MemoryParams d;
  RealMatrix innovation_corr;  ///< q x q correlation of eps_t
  std::size_t n = 1000;
  std::size_t truncation = 50000;  ///< K, number of MA coefficients kept
  std::uint64_t seed = 0;

  /// q = 2 with unit variances and correlation rho.
  static Varfima0Spec bivariate(double d1, double d2, double rho, std::size_t n, std::size_t truncation,
                                std::uint64_t seed);

  /// Throws InvalidArgument on any violated invariant; returns the lower
  /// Cholesky factor of the innovation correlation.
  RealMatrix validate() const;
};

/// Equicorrelated q x q matrix: unit diagonal, rho elsewhere.
RealMatrix equicorrelation(std::size_t q, double rho);

/// Coefficients of (1 - B)^{-d}: psi_0 = 1, psi_k = psi_{k-1} (k - 1 + d) / k.
std::vector<double> fracdiff_coeffs(double d, std::size_t count);

/// (n + truncation) x q innovation block, column-major, covariance
/// innovation_corr. Standard normals come from inverse-CDF sampling of the
/// counter stream keyed by the seed; draw (s, i) uses counter s*q + i.
std::vector<double> draw_innovations(const Varfima0Spec& spec);

enum class ConvolutionPath { automatic, direct, fft };

/// Applies the truncated fractional filters to an innovation block of `rows`
/// rows (column-major, q = d.size() columns) and keeps the last n outputs.
/// Requires rows >= n + truncation - 1.
MultivariateSeries filter_innovations(std::span<const double> innovations, std::size_t rows, const MemoryParams& d,
                                      std::size_t truncation, std::size_t n,
                                      ConvolutionPath path = ConvolutionPath::automatic);

/// Deterministic: equal settings give bit-identical series.
MultivariateSeries simulate(const Varfima0Spec& spec);

}  // namespace lrmem

#endif  // LRMEM_SIMULATOR_HPP
