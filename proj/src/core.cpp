#include "lrmem/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lrmem/errors.hpp"

namespace lrmem {

MultivariateSeries::MultivariateSeries(std::size_t n, std::size_t q, std::vector<double> column_major)
    : n_(n), q_(q), values_(std::move(column_major)) {
  if (n_ < 2) throw InvalidArgument("series needs at least 2 observations, got " + std::to_string(n_));
  if (q_ < 1) throw InvalidArgument("series needs at least 1 coordinate");
  if (values_.size() != n_ * q_) {
    throw InvalidArgument("series storage has " + std::to_string(values_.size()) + " values, expected " +
                          std::to_string(n_ * q_));
  }
  for (std::size_t i = 0; i < q_; ++i) {
    for (std::size_t t = 0; t < n_; ++t) {
      if (!std::isfinite(values_[i * n_ + t])) {
        std::ostringstream msg;
        msg << "non-finite observation at row " << t + 1 << ", column " << i + 1;
        throw DataError(msg.str());
      }
    }
  }
}

MultivariateSeries MultivariateSeries::from_rows(std::size_t n, std::size_t q, std::span<const double> row_major) {
  if (row_major.size() != n * q) {
    throw InvalidArgument("row-major buffer has " + std::to_string(row_major.size()) + " values, expected " +
                          std::to_string(n * q));
  }
  std::vector<double> col(n * q);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < q; ++i) col[i * n + t] = row_major[t * q + i];
  return MultivariateSeries(n, q, std::move(col));
}

MultivariateSeries MultivariateSeries::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return MultivariateSeries(n_, q_, std::move(v));
}

MultivariateSeries MultivariateSeries::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != q_) throw InvalidArgument("permutation length must equal the series dimension");
  std::vector<bool> seen(q_, false);
  std::vector<double> v(values_.size());
  for (std::size_t k = 0; k < q_; ++k) {
    if (perm[k] >= q_ || seen[perm[k]]) throw InvalidArgument("not a permutation");
    seen[perm[k]] = true;
    auto src = column(perm[k]);
    std::copy(src.begin(), src.end(), v.begin() + static_cast<std::ptrdiff_t>(k * n_));
  }
  return MultivariateSeries(n_, q_, std::move(v));
}

FourierGrid::FourierGrid(std::size_t n, std::size_t m) : n_(n) {
  if (m < 1) throw InvalidArgument("bandwidth m must be at least 1");
  if (2 * m >= n) {
    throw InvalidArgument("bandwidth m=" + std::to_string(m) + " must satisfy m < n/2 (n=" + std::to_string(n) + ")");
  }
  freqs_.resize(m);
  // Each frequency from its integer index, never by accumulation.
  for (std::size_t j = 1; j <= m; ++j) freqs_[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

FourierGrid fourier_grid(std::size_t n, std::size_t m) { return FourierGrid(n, m); }

std::size_t bandwidth_from_exponent(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("exponent must lie in (0,1), got " + std::to_string(alpha));
  if (n < 3) throw InvalidArgument("sample size too small for a Fourier grid");
  auto m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), alpha)));
  const std::size_t cap = (n + 1) / 2 - 1;  // ceil(n/2) - 1
  return std::clamp<std::size_t>(m, 1, cap);
}

namespace {

double column_mean(std::span<const double> x) {
  // Neumaier compensated sum.
  double sum = 0.0, comp = 0.0;
  for (double v : x) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(x.size());
}

}  // namespace

MultivariateSeries demean(const MultivariateSeries& series) {
  const std::size_t n = series.rows();
  std::vector<double> out(series.data().begin(), series.data().end());
  for (std::size_t i = 0; i < series.cols(); ++i) {
    std::span<double> col(out.data() + i * n, n);
    if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col[0]; })) {
      std::fill(col.begin(), col.end(), 0.0);
      continue;
    }
    // Subtract until the residual mean is at rounding level, so a second call
    // finds nothing to do and returns its input bit for bit.
    for (int pass = 0; pass < 16; ++pass) {
      double scale = 0.0;
      for (double v : col) scale = std::max(scale, std::abs(v));
      const double mu = column_mean(col);
      if (std::abs(mu) <= 4.0 * std::numeric_limits<double>::epsilon() * scale) break;
      for (double& v : col) v -= mu;
    }
  }
  return MultivariateSeries(n, series.cols(), std::move(out));
}

bool ParamBounds::contains(std::span<const double> d) const noexcept {
  return std::all_of(d.begin(), d.end(), [&](double x) { return x >= lower() && x <= upper(); });
}

void ParamBounds::validate() const {
  if (!(eps1 > 0.0 && eps2 > 0.0 && eps1 < 1.0 && eps2 < 1.0 && lower() < upper())) {
    throw InvalidArgument("bounds require 0 < eps1, eps2 and -1/2 + eps1 < 1/2 - eps2");
  }
}

double max_hermitian_defect(const SpectralSequence& spec) {
  double worst = 0.0;
  for (const auto& f : spec.mats)
    for (Eigen::Index r = 0; r < f.rows(); ++r)
      for (Eigen::Index s = 0; s < f.cols(); ++s) worst = std::max(worst, std::abs(f(r, s) - std::conj(f(s, r))));
  return worst;
}

double min_eigenvalue(const SpectralSequence& spec) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& f : spec.mats) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(f, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

}  // namespace lrmem
