#include "lrmem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "lrmem/errors.hpp"

namespace lrmem {

namespace {

void check_grid(const MultivariateSeries& series, const FourierGrid& grid) {
  if (grid.n() != series.rows()) {
    throw InvalidArgument("Fourier grid built for n=" + std::to_string(grid.n()) + " but series has " +
                          std::to_string(series.rows()) + " rows");
  }
}

SpectralSequence raw_ordinates(const DftTable& table, const FourierGrid& grid) {
  SpectralSequence out{grid, {}};
  out.mats.reserve(grid.m());
  for (std::size_t j = 1; j <= grid.m(); ++j) out.mats.push_back(table.outer(static_cast<long long>(j)));
  return out;
}

}  // namespace

Eigen::VectorXcd dft_at(const MultivariateSeries& series, double lambda) {
  const std::size_t n = series.rows();
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(series.cols()));
  for (std::size_t t = 1; t <= n; ++t) {
    const std::complex<double> e = std::polar(1.0, static_cast<double>(t) * lambda);
    for (std::size_t i = 0; i < series.cols(); ++i) w[static_cast<Eigen::Index>(i)] += series(t - 1, i) * e;
  }
  return w / std::sqrt(kTwoPi * static_cast<double>(n));
}

DftTable::DftTable(const MultivariateSeries& series)
    : DftTable(series, {}, 1.0 / std::sqrt(kTwoPi * static_cast<double>(series.rows()))) {}

DftTable::DftTable(const MultivariateSeries& series, std::span<const double> window, double scale)
    : n_(series.rows()), q_(series.cols()), w_(series.rows() * series.cols()) {
  if (!window.empty() && window.size() != n_ * q_) throw InvalidArgument("data window must be n x q");
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < q_; ++i) {
    const auto col = series.column(i);
    for (std::size_t t = 0; t < n_; ++t) x[t] = window.empty() ? col[t] : window[i * n_ + t] * col[t];
    // sum_{t=1}^n x_t e^{i t lambda_j} = e^{i lambda_j} conj(FFT(x)_j) for real x.
    const auto f = fft::forward_real(x);
    for (std::size_t j = 0; j < n_; ++j) {
      const double lam = kTwoPi * static_cast<double>(j) / static_cast<double>(n_);
      w_[i * n_ + j] = scale * std::polar(1.0, lam) * std::conj(f[j]);
    }
  }
}

std::complex<double> DftTable::at(long long j, std::size_t i) const noexcept {
  const auto n = static_cast<long long>(n_);
  long long r = j % n;
  if (r < 0) r += n;
  return w_[i * n_ + static_cast<std::size_t>(r)];
}

ComplexMatrix DftTable::outer(long long j) const {
  const auto q = static_cast<Eigen::Index>(q_);
  ComplexMatrix m(q, q);
  for (Eigen::Index r = 0; r < q; ++r) {
    const auto wr = at(j, static_cast<std::size_t>(r));
    for (Eigen::Index s = 0; s < q; ++s) m(r, s) = wr * std::conj(at(j, static_cast<std::size_t>(s)));
  }
  return m;
}

SpectralSequence periodogram(const MultivariateSeries& series, const FourierGrid& grid) {
  check_grid(series, grid);
  return raw_ordinates(DftTable(series), grid);
}

double cosine_bell(double u) noexcept {
  if (u > 0.5) u = 1.0 - u;
  return 0.5 * (1.0 - std::cos(kTwoPi * u));
}

namespace {

TaperSpec normalized_taper(TaperKind kind, std::size_t n, std::size_t q, const std::vector<double>& profile) {
  double ss = 0.0;
  for (double h : profile) ss += h * h;
  if (!(ss > 0.0)) throw InvalidArgument("taper has zero energy");
  const double norm = 1.0 / std::sqrt(ss);
  TaperSpec spec{kind, n, q, std::vector<double>(n * q)};
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t t = 0; t < n; ++t) spec.values[i * n + t] = profile[t] * norm;
  return spec;
}

}  // namespace

TaperSpec cosine_bell_taper(std::size_t n, std::size_t q) {
  if (n < 2) throw InvalidArgument("taper length must be at least 2");
  if (q < 1) throw InvalidArgument("taper needs at least one coordinate");
  std::vector<double> h(n);
  for (std::size_t t = 1; t <= n; ++t) h[t - 1] = cosine_bell(static_cast<double>(t) / static_cast<double>(n));
  return normalized_taper(TaperKind::cosine_bell, n, q, h);
}

TaperSpec trivial_taper(std::size_t n, std::size_t q) {
  if (n < 2) throw InvalidArgument("taper length must be at least 2");
  if (q < 1) throw InvalidArgument("taper needs at least one coordinate");
  return TaperSpec{TaperKind::none, n, q, std::vector<double>(n * q, 1.0 / std::sqrt(static_cast<double>(n)))};
}

SpectralSequence tapered_periodogram(const MultivariateSeries& series, const FourierGrid& grid,
                                     const TaperSpec& taper) {
  check_grid(series, grid);
  if (taper.n != series.rows()) {
    throw InvalidArgument("taper length " + std::to_string(taper.n) + " does not match series length " +
                          std::to_string(series.rows()));
  }
  if (taper.q != series.cols() || taper.values.size() != taper.n * taper.q)
    throw InvalidArgument("taper dimension does not match the series");
  return raw_ordinates(DftTable(series, taper.values, 1.0 / std::sqrt(kTwoPi)), grid);
}

SmoothingWeights::SmoothingWeights(std::vector<double> values, bool exclude_minus_j)
    : values_(std::move(values)), exclude_minus_j_(exclude_minus_j) {
  if (values_.empty() || values_.size() % 2 == 0) throw InvalidArgument("smoothing window needs 2*ell+1 values");
  const std::size_t len = values_.size();
  for (std::size_t k = 0; k < len; ++k) {
    if (!(values_[k] >= 0.0) || !std::isfinite(values_[k])) throw InvalidArgument("smoothing weights must be >= 0");
    if (values_[k] != values_[len - 1 - k]) throw InvalidArgument("smoothing weights must satisfy W(k) = W(-k)");
  }
  const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("smoothing weights must sum to 1");
}

SmoothingWeights SmoothingWeights::point_mass(bool exclude_minus_j) { return SmoothingWeights({1.0}, exclude_minus_j); }

SmoothingWeights bartlett_weights(std::size_t n, std::size_t ell, bool exclude_minus_j) {
  if (ell < 1) throw InvalidArgument("Bartlett half-width must be at least 1");
  if (2 * ell >= n) {
    throw InvalidArgument("Bartlett half-width " + std::to_string(ell) + " must be below n/2 (n=" +
                          std::to_string(n) + ")");
  }
  const double nn = static_cast<double>(n);
  const double ll = static_cast<double>(ell);
  std::vector<double> w(2 * ell + 1);
  w[ell] = ll / nn;
  for (std::size_t k = 1; k <= ell; ++k) {
    const double half = kPi * static_cast<double>(k) / nn;  // lambda_k / 2
    const double num = std::sin(ll * half);
    const double den = std::sin(half);
    const double v = (num * num) / (nn * ll * den * den);
    w[ell + k] = v;
    w[ell - k] = v;
  }
  // Sum symmetric pairs so both halves see identical rounding.
  double total = w[ell];
  for (std::size_t k = 1; k <= ell; ++k) total += 2.0 * w[ell + k];
  for (double& v : w) v /= total;
  return SmoothingWeights(std::move(w), exclude_minus_j);
}

std::size_t halfwidth_from_exponent(std::size_t n, double beta) { return bandwidth_from_exponent(n, beta); }

SpectralSequence smoothed_periodogram(const MultivariateSeries& series, const FourierGrid& grid,
                                      const SmoothingWeights& weights) {
  const std::size_t q = series.cols();
  std::vector<SmoothingWeights> shared(q * q, weights);
  return smoothed_periodogram(series, grid, shared);
}

SpectralSequence smoothed_periodogram(const MultivariateSeries& series, const FourierGrid& grid,
                                      std::span<const SmoothingWeights> entry_weights) {
  check_grid(series, grid);
  const std::size_t n = series.rows();
  const std::size_t q = series.cols();
  if (entry_weights.size() != q * q)
    throw InvalidArgument("per-entry smoothing needs q*q windows, got " + std::to_string(entry_weights.size()));
  const std::size_t ell = entry_weights.front().ell();
  const bool exclude = entry_weights.front().exclude_minus_j();
  for (const auto& w : entry_weights)
    if (w.ell() != ell || w.exclude_minus_j() != exclude)
      throw InvalidArgument("per-entry windows must share half-width and exclusion flag");
  if (2 * ell >= n) throw InvalidArgument("smoothing half-width must be below n/2");

  // Periodogram at every Fourier frequency, entry-major: pg[(r*q+s)*n + j].
  const DftTable table(series);
  std::vector<std::complex<double>> pg(q * q * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t s = 0; s < q; ++s)
        pg[(r * q + s) * n + j] = table.at(static_cast<long long>(j), r) * std::conj(table.at(static_cast<long long>(j), s));

  const auto L = static_cast<long long>(ell);
  const auto nn = static_cast<long long>(n);
  SpectralSequence out{grid, {}};
  out.mats.reserve(grid.m());
  for (std::size_t jj = 1; jj <= grid.m(); ++jj) {
    const auto j = static_cast<long long>(jj);
    ComplexMatrix f(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    for (std::size_t e = 0; e < q * q; ++e) {
      const SmoothingWeights& w = entry_weights[e];
      const std::complex<double>* row = pg.data() + e * n;
      std::complex<double> acc = 0.0;
      for (long long k = -L; k <= L; ++k) {
        if (exclude && k == -j) continue;
        long long idx = (j + k) % nn;
        if (idx < 0) idx += nn;
        acc += w.at(k) * row[idx];
      }
      if (exclude && j <= L) acc /= (1.0 - w.at(-j));
      f(static_cast<Eigen::Index>(e / q), static_cast<Eigen::Index>(e % q)) = acc;
    }
    out.mats.push_back(std::move(f));
  }
  return out;
}

}  // namespace lrmem
