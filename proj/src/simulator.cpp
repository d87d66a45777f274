#include "lrmem/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "fft.hpp"
#include "lrmem/errors.hpp"
#include "lrmem/rng.hpp"

namespace lrmem {

namespace {

void check_memory(double d) {
  if (!(std::abs(d) < 0.5)) {
    std::ostringstream msg;
    msg << "memory parameter " << d << " outside (-1/2, 1/2)";
    throw InvalidArgument(msg.str());
  }
}

// Work below this many multiply-adds goes through the direct sum.
constexpr std::size_t kDirectWorkLimit = 1u << 18;

}  // namespace

RealMatrix equicorrelation(std::size_t q, double rho) {
  RealMatrix c = RealMatrix::Constant(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q), rho);
  c.diagonal().setOnes();
  return c;
}

Varfima0Spec Varfima0Spec::bivariate(double d1, double d2, double rho, std::size_t n, std::size_t truncation,
                                     std::uint64_t seed) {
  return Varfima0Spec{MemoryParams{{d1, d2}}, equicorrelation(2, rho), n, truncation, seed};
}

RealMatrix Varfima0Spec::validate() const {
  const auto q = static_cast<Eigen::Index>(d.size());
  if (q < 1) throw InvalidArgument("memory vector is empty");
  for (double dk : d.d) check_memory(dk);
  if (n < 2) throw InvalidArgument("sample size n must be at least 2");
  if (truncation < 1) throw InvalidArgument("truncation must be at least 1");
  if (innovation_corr.rows() != q || innovation_corr.cols() != q)
    throw InvalidArgument("innovation correlation must be " + std::to_string(q) + "x" + std::to_string(q));
  for (Eigen::Index r = 0; r < q; ++r) {
    if (innovation_corr(r, r) != 1.0) throw InvalidArgument("innovation correlation needs a unit diagonal");
    for (Eigen::Index s = 0; s < r; ++s)
      if (innovation_corr(r, s) != innovation_corr(s, r))
        throw InvalidArgument("innovation correlation must be symmetric");
  }
  Eigen::LLT<RealMatrix> llt(innovation_corr);
  if (llt.info() != Eigen::Success) throw InvalidArgument("innovation correlation is not positive definite");
  return llt.matrixL();
}

std::vector<double> fracdiff_coeffs(double d, std::size_t count) {
  check_memory(d);
  if (count < 1) throw InvalidArgument("coefficient count must be positive");
  std::vector<double> psi(count);
  psi[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k) {
    const double kk = static_cast<double>(k);
    psi[k] = psi[k - 1] * (kk - 1.0 + d) / kk;
  }
  return psi;
}

std::vector<double> draw_innovations(const Varfima0Spec& spec) {
  const RealMatrix chol = spec.validate();
  const std::size_t q = spec.d.size();
  const std::size_t rows = spec.n + spec.truncation;
  CounterRng rng(mix64(spec.seed));
  std::vector<double> z(q);
  std::vector<double> out(rows * q);
  for (std::size_t s = 0; s < rows; ++s) {
    for (std::size_t i = 0; i < q; ++i) z[i] = rng.next_gaussian();
    for (std::size_t i = 0; i < q; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k <= i; ++k)
        acc += chol(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * z[k];
      out[i * rows + s] = acc;
    }
  }
  return out;
}

MultivariateSeries filter_innovations(std::span<const double> innovations, std::size_t rows, const MemoryParams& d,
                                      std::size_t truncation, std::size_t n, ConvolutionPath path) {
  const std::size_t q = d.size();
  if (q == 0) throw InvalidArgument("memory vector is empty");
  if (innovations.size() != rows * q) throw InvalidArgument("innovation block size does not match rows * q");
  if (truncation < 1) throw InvalidArgument("truncation must be at least 1");
  if (rows + 1 < n + truncation) throw InvalidArgument("innovation block too short for n + truncation - 1 rows");

  if (path == ConvolutionPath::automatic)
    path = n * truncation <= kDirectWorkLimit ? ConvolutionPath::direct : ConvolutionPath::fft;

  const std::size_t first = rows - n;  // innovation index of output t = 0
  std::vector<double> out(n * q);
  for (std::size_t i = 0; i < q; ++i) {
    const auto eps = innovations.subspan(i * rows, rows);
    auto dst = std::span<double>(out).subspan(i * n, n);
    if (d[i] == 0.0) {
      std::copy_n(eps.begin() + static_cast<std::ptrdiff_t>(first), n, dst.begin());
      continue;
    }
    const auto psi = fracdiff_coeffs(d[i], truncation);
    if (path == ConvolutionPath::direct) {
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t s = first + t;
        double acc = 0.0;
        for (std::size_t k = 0; k < truncation; ++k) acc += psi[k] * eps[s - k];
        dst[t] = acc;
      }
    } else {
      // Circular convolution of length L >= rows equals the linear one at every
      // index s >= truncation - 1.
      const std::size_t len = fft::next_pow2(rows);
      auto psi_hat = fft::forward_real_half(psi, len);
      auto eps_hat = fft::forward_real_half(eps, len);
      for (std::size_t j = 0; j < eps_hat.size(); ++j) eps_hat[j] *= psi_hat[j];
      const auto conv = fft::inverse_real_half(eps_hat, len);
      const double scale = 1.0 / static_cast<double>(len);
      for (std::size_t t = 0; t < n; ++t) dst[t] = conv[first + t] * scale;
    }
  }
  return MultivariateSeries(n, q, std::move(out));
}

MultivariateSeries simulate(const Varfima0Spec& spec) {
  const auto innovations = draw_innovations(spec);
  return filter_innovations(innovations, spec.n + spec.truncation, spec.d, spec.truncation, spec.n);
}

}  // namespace lrmem
