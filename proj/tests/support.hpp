// Shared fixtures and brute-force oracles for the test binaries.
#ifndef LRMEM_TESTS_SUPPORT_HPP
#define LRMEM_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "lrmem/core.hpp"
#include "lrmem/rng.hpp"

namespace lrmem::test {

/// i.i.d. N(0,1) series (not demeaned).
inline MultivariateSeries gaussian_series(std::size_t n, std::size_t q, std::uint64_t seed) {
  CounterRng rng(hash_words({seed, 0xFEEDULL}));
  std::vector<double> v(n * q);
  for (auto& x : v) x = rng.next_gaussian();
  return MultivariateSeries(n, q, std::move(v));
}

/// (2 pi)^{-1/2} sum_t a_t X_t e^{i t lambda}, one coordinate, O(n).
inline std::complex<double> direct_dft(const MultivariateSeries& x, std::size_t i, double lambda,
                                       const std::vector<double>* window = nullptr) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t t = 1; t <= x.rows(); ++t) {
    const double a = window ? (*window)[t - 1] : 1.0 / std::sqrt(static_cast<double>(x.rows()));
    acc += a * x(t - 1, i) * std::polar(1.0, static_cast<double>(t) * lambda);
  }
  return acc / std::sqrt(kTwoPi);
}

/// Periodogram matrix at 2 pi j / n by direct summation.
inline ComplexMatrix direct_periodogram(const MultivariateSeries& x, long long j,
                                        const std::vector<std::vector<double>>* windows = nullptr) {
  const std::size_t q = x.cols();
  const double lam = kTwoPi * static_cast<double>(j) / static_cast<double>(x.rows());
  Eigen::VectorXcd w(q);
  for (std::size_t i = 0; i < q; ++i) w(i) = direct_dft(x, i, lam, windows ? &(*windows)[i] : nullptr);
  return w * w.adjoint();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace lrmem::test

#endif
