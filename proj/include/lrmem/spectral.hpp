#ifndef LRMEM_SPECTRAL_HPP
#define LRMEM_SPECTRAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lrmem/core.hpp"

namespace lrmem {

/// w_n(lambda) = (2 pi n)^{-1/2} sum_{t=1}^n X_t e^{i t lambda}, by direct
/// summation. Valid for any real lambda.
Eigen::VectorXcd dft_at(const MultivariateSeries& series, double lambda);

/// The DFT of every coordinate at all n Fourier frequencies 2 pi j / n,
/// j = 0..n-1, computed once by FFT:
///   w(lambda_j) = c * sum_{t=1}^n a_t^(i) X_t^(i) e^{i t lambda_j}
/// where a is an optional per-coordinate data window and c the overall scale.
class DftTable {
 public:
  /// Ordinary DFT (a = 1, c = (2 pi n)^{-1/2}).
  explicit DftTable(const MultivariateSeries& series);
  /// Windowed DFT; `window` is n x q column-major, `scale` multiplies the sum.
  DftTable(const MultivariateSeries& series, std::span<const double> window, double scale);

  std::size_t n() const noexcept { return n_; }
  std::size_t q() const noexcept { return q_; }
  /// Any integer j; reduced modulo n.
  std::complex<double> at(long long j, std::size_t i) const noexcept;

  /// I(lambda_j) = w(lambda_j) w(lambda_j)^*.
  ComplexMatrix outer(long long j) const;

 private:
  std::size_t n_;
  std::size_t q_;
  std::vector<std::complex<double>> w_;  // q blocks of n
};

/// I_n(lambda_j) for each grid frequency.
SpectralSequence periodogram(const MultivariateSeries& series, const FourierGrid& grid);

enum class TaperKind { none, cosine_bell };

/// Normalized data taper S_n^(i)(t), t = 1..n, with sum_t S(t)^2 = 1 per
/// coordinate.
struct TaperSpec {
  TaperKind kind = TaperKind::none;
  std::size_t n = 0;
  std::size_t q = 0;
  std::vector<double> values;  ///< n x q column-major

  std::span<const double> coordinate(std::size_t i) const { return {values.data() + i * n, n}; }
};

/// h(u) = (1 - cos(2 pi u)) / 2 on [0, 1/2], mirrored as h(1 - u) above 1/2.
double cosine_bell(double u) noexcept;

/// Cosine-bell taper h(t/n), t = 1..n, normalized per coordinate.
TaperSpec cosine_bell_taper(std::size_t n, std::size_t q);
/// Flat taper S(t) = n^{-1/2}; tapering with it reproduces the periodogram.
TaperSpec trivial_taper(std::size_t n, std::size_t q);

/// I_T(lambda_j) = w_T w_T^*, w_T = (2 pi)^{-1/2} sum_t S(t) (.) X_t e^{i t lambda_j}.
SpectralSequence tapered_periodogram(const MultivariateSeries& series, const FourierGrid& grid,
                                     const TaperSpec& taper);

/// Symmetric nonnegative window W(k), |k| <= ell, summing to one.
class SmoothingWeights {
 public:
  /// `values` holds W(-ell..ell). Validates symmetry (exact), nonnegativity
  /// and unit sum (1e-12).
  SmoothingWeights(std::vector<double> values, bool exclude_minus_j);

  /// W = delta_0; smoothing with it is the identity.
  static SmoothingWeights point_mass(bool exclude_minus_j = false);

  std::size_t ell() const noexcept { return (values_.size() - 1) / 2; }
  double at(long long k) const noexcept { return values_[static_cast<std::size_t>(k + static_cast<long long>(ell()))]; }
  std::span<const double> values() const noexcept { return values_; }
  bool exclude_minus_j() const noexcept { return exclude_minus_j_; }

 private:
  std::vector<double> values_;
  bool exclude_minus_j_;
};

/// Bartlett (Fejer) window sin^2(ell lambda_k / 2) / (n ell sin^2(lambda_k / 2))
/// evaluated at lambda_k = 2 pi k / n, with W(0) = ell / n, renormalized to
/// sum to one over |k| <= ell. Requires 1 <= ell < n/2.
SmoothingWeights bartlett_weights(std::size_t n, std::size_t ell, bool exclude_minus_j = false);

/// floor(n^beta), clamped to ceil(n/2) - 1 like the bandwidth.
std::size_t halfwidth_from_exponent(std::size_t n, double beta);

/// f_hat(lambda_j) = sum_{|k|<=ell} W(k) I(lambda_{j+k}), using the
/// periodic/Hermitian extension of I beyond 0..n-1. With exclude_minus_j the
/// k = -j term is dropped and that frequency's weights renormalized.
SpectralSequence smoothed_periodogram(const MultivariateSeries& series, const FourierGrid& grid,
                                      const SmoothingWeights& weights);

/// Per-entry variant: `entry_weights` is q x q row-major, one window per
/// matrix entry, all with the same half-width and exclusion flag. The output
/// is Hermitian when entry (r,s) and (s,r) share weights; it is PSD only if
/// the q x q weight pattern is PSD for every k (not checked).
SpectralSequence smoothed_periodogram(const MultivariateSeries& series, const FourierGrid& grid,
                                      std::span<const SmoothingWeights> entry_weights);

}  // namespace lrmem

#endif  // LRMEM_SPECTRAL_HPP
