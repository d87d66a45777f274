#ifndef LRMEM_CORE_HPP
#define LRMEM_CORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace lrmem {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// An n x q block of real observations, time along rows.
///
/// Storage is column-major (each coordinate contiguous) since every spectral
/// computation works one coordinate at a time. Construction rejects n < 2,
/// q < 1 and non-finite entries; after that the value is immutable.
class MultivariateSeries {
 public:
  /// `column_major` holds q consecutive columns of length n.
  MultivariateSeries(std::size_t n, std::size_t q, std::vector<double> column_major);

  /// Builds from row-major data (the layout of a CSV file).
  static MultivariateSeries from_rows(std::size_t n, std::size_t q, std::span<const double> row_major);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return q_; }

  double operator()(std::size_t t, std::size_t i) const noexcept { return values_[i * n_ + t]; }
  std::span<const double> column(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return values_; }

  /// Returns c * X.
  MultivariateSeries scaled(double c) const;
  /// Reorders coordinates: output column k is input column perm[k].
  MultivariateSeries permuted(std::span<const std::size_t> perm) const;

  bool operator==(const MultivariateSeries&) const = default;

 private:
  std::size_t n_;
  std::size_t q_;
  std::vector<double> values_;
};

/// Fourier frequencies lambda_j = 2*pi*j/n, j = 1..m.
class FourierGrid {
 public:
  FourierGrid(std::size_t n, std::size_t m);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return freqs_.size(); }
  std::span<const double> freqs() const noexcept { return freqs_; }
  /// 1-based, matching lambda_j.
  double lambda(std::size_t j) const noexcept { return freqs_[j - 1]; }

 private:
  std::size_t n_;
  std::vector<double> freqs_;
};

FourierGrid fourier_grid(std::size_t n, std::size_t m);

/// floor(n^alpha), clamped to ceil(n/2) - 1 so the grid stays below Nyquist.
std::size_t bandwidth_from_exponent(std::size_t n, double alpha);

/// Subtracts each column's sample mean.
MultivariateSeries demean(const MultivariateSeries& series);

/// Memory parameter vector d.
struct MemoryParams {
  std::vector<double> d;

  std::size_t size() const noexcept { return d.size(); }
  double operator[](std::size_t k) const noexcept { return d[k]; }
  double& operator[](std::size_t k) noexcept { return d[k]; }
  bool operator==(const MemoryParams&) const = default;
};

/// The admissible box [-1/2 + eps1, 1/2 - eps2]^q.
struct ParamBounds {
  double eps1 = 0.001;
  double eps2 = 0.001;

  double lower() const noexcept { return -0.5 + eps1; }
  double upper() const noexcept { return 0.5 - eps2; }
  bool contains(std::span<const double> d) const noexcept;
  void validate() const;
};

/// Spectral-density estimates f_n(lambda_j), one q x q Hermitian matrix per
/// grid frequency.
struct SpectralSequence {
  FourierGrid grid;
  std::vector<ComplexMatrix> mats;

  std::size_t dim() const noexcept { return mats.empty() ? 0 : static_cast<std::size_t>(mats.front().rows()); }
};

/// max_j max_{r,s} |f_rs - conj(f_sr)|.
double max_hermitian_defect(const SpectralSequence& spec);
/// Smallest eigenvalue over all matrices of the sequence.
double min_eigenvalue(const SpectralSequence& spec);

}  // namespace lrmem

#endif  // LRMEM_CORE_HPP
