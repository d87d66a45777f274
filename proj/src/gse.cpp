#include "lrmem/gse.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "lrmem/errors.hpp"
#include "lrmem/spectral.hpp"

namespace lrmem {

ObjectiveContext::ObjectiveContext(SpectralSequence spec, CrossSpectrum cross)
    : spec_(std::move(spec)), q_(spec_.dim()), cross_(cross) {
  const std::size_t m = spec_.grid.m();
  if (spec_.mats.size() != m) {
    throw InvalidArgument("spectral sequence has " + std::to_string(spec_.mats.size()) +
                          " matrices but the grid has m=" + std::to_string(m));
  }
  if (q_ == 0) throw InvalidArgument("empty spectral sequence");
  log_lambda_.resize(m);
  half_phase_.resize(m);
  double acc = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double lam = spec_.grid.lambda(j);
    log_lambda_[j - 1] = std::log(lam);
    half_phase_[j - 1] = (lam - kPi) / 2.0;
    acc += log_lambda_[j - 1];
  }
  mean_log_lambda_ = acc / static_cast<double>(m);
  entries_.resize(q_ * q_ * m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& f = spec_.mats[j];
    if (static_cast<std::size_t>(f.rows()) != q_ || static_cast<std::size_t>(f.cols()) != q_)
      throw InvalidArgument("spectral matrices must all be q x q");
    for (std::size_t r = 0; r < q_; ++r)
      for (std::size_t s = 0; s < q_; ++s) {
        const std::complex<double> v = f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s));
        entries_[(r * q_ + s) * m + j] = cross == CrossSpectrum::real_part ? std::complex<double>(v.real(), 0.0) : v;
      }
  }
}

ComplexMatrix lambda_inverse(const MemoryParams& d, double lambda) {
  const auto q = static_cast<Eigen::Index>(d.size());
  ComplexMatrix out = ComplexMatrix::Zero(q, q);
  for (Eigen::Index k = 0; k < q; ++k) {
    const double dk = d[static_cast<std::size_t>(k)];
    out(k, k) = std::polar(std::pow(lambda, dk), (lambda - kPi) * dk / 2.0);
  }
  return out;
}

RealMatrix g_hat(std::span<const double> d, const ObjectiveContext& ctx) {
  const std::size_t q = ctx.dim();
  const std::size_t m = ctx.m();
  if (d.size() != q) throw InvalidArgument("memory vector length does not match the spectral dimension");
  const auto loglam = ctx.log_lambda();
  const auto phase = ctx.half_phase();
  const auto f = ctx.entries();

  // a_r(j) = lambda_j^{d_r} e^{i (lambda_j - pi) d_r / 2}; entry (r,s) of the
  // congruence is a_r conj(a_s) f_rs.
  std::vector<std::complex<double>> a(q * m);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t j = 0; j < m; ++j) a[r * m + j] = std::polar(std::exp(d[r] * loglam[j]), phase[j] * d[r]);

  RealMatrix g(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  for (std::size_t r = 0; r < q; ++r) {
    for (std::size_t s = r; s < q; ++s) {
      const std::complex<double>* frs = f.data() + (r * q + s) * m;
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += (a[r * m + j] * std::conj(a[s * m + j]) * frs[j]).real();
      const double v = acc / static_cast<double>(m);
      g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = v;
      g(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(r)) = v;
    }
  }
  return g;
}

RealMatrix g_hat(const MemoryParams& d, const ObjectiveContext& ctx) { return g_hat(std::span<const double>(d.d), ctx); }

double objective(std::span<const double> d, const ObjectiveContext& ctx) {
  const RealMatrix g = g_hat(d, ctx);
  Eigen::LLT<RealMatrix> llt(g);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  double logdet = 0.0;
  const RealMatrix& L = llt.matrixLLT();
  for (Eigen::Index k = 0; k < L.rows(); ++k) {
    const double lkk = L(k, k);
    if (!(lkk > 0.0)) return std::numeric_limits<double>::infinity();
    logdet += 2.0 * std::log(lkk);
  }
  double dsum = 0.0;
  for (double v : d) dsum += v;
  const double s = logdet - 2.0 * dsum * ctx.mean_log_lambda();
  return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
}

double objective(const MemoryParams& d, const ObjectiveContext& ctx) { return objective(std::span<const double>(d.d), ctx); }

std::vector<double> AsymptoticCovariance::sd() const {
  std::vector<double> out(static_cast<std::size_t>(covariance.rows()));
  for (Eigen::Index k = 0; k < covariance.rows(); ++k) out[static_cast<std::size_t>(k)] = std::sqrt(covariance(k, k));
  return out;
}

AsymptoticCovariance asymptotic_covariance(const RealMatrix& g0, std::size_t m) {
  if (m < 1) throw InvalidArgument("bandwidth m must be positive");
  if (g0.rows() != g0.cols() || g0.rows() == 0) throw InvalidArgument("G0 must be a nonempty square matrix");
  Eigen::LLT<RealMatrix> llt(g0);
  if (llt.info() != Eigen::Success) throw InvalidArgument("G0 is singular or not positive definite");
  const auto q = g0.rows();
  const RealMatrix inv = llt.solve(RealMatrix::Identity(q, q));
  const RealMatrix had = g0.cwiseProduct(inv);
  const RealMatrix id = RealMatrix::Identity(q, q);
  RealMatrix sigma = 2.0 * (had + id + (kPi * kPi / 4.0) * (had - id));
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  Eigen::LLT<RealMatrix> sllt(sigma);
  if (sllt.info() != Eigen::Success) throw NumericError("asymptotic Sigma is not positive definite");
  RealMatrix cov = sllt.solve(id) / static_cast<double>(m);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return AsymptoticCovariance{std::move(sigma), std::move(cov)};
}

EstimateResult minimize(const ObjectiveContext& ctx, const ParamBounds& bounds, const MinimizerSettings& settings) {
  bounds.validate();
  const Box box{bounds.lower(), bounds.upper(), ctx.dim()};
  const Objective f = [&ctx](std::span<const double> d) { return objective(d, ctx); };

  EstimateResult res;
  res.m = ctx.m();
  const auto coarse = grid_search(f, box, settings.grid_step);
  if (!std::isfinite(coarse.value)) {
    res.d_hat = MemoryParams{coarse.x};
    res.objective_value = coarse.value;
    res.g_hat = g_hat(res.d_hat, ctx);
    res.asymptotic_sd.assign(ctx.dim(), std::numeric_limits<double>::quiet_NaN());
    return res;
  }
  auto refined = nelder_mead(f, box, coarse.x, settings.simplex);
  box.project(refined.x);
  res.d_hat = MemoryParams{refined.x};
  res.objective_value = objective(res.d_hat, ctx);
  res.g_hat = g_hat(res.d_hat, ctx);
  res.iterations = refined.iterations;
  res.converged = refined.converged && std::isfinite(res.objective_value);
  try {
    res.asymptotic_sd = asymptotic_covariance(res.g_hat, ctx.m()).sd();
  } catch (const std::exception&) {
    res.converged = false;
    res.asymptotic_sd.assign(ctx.dim(), std::numeric_limits<double>::quiet_NaN());
  }
  return res;
}

double shimotsu_objective(const MemoryParams& d, const MultivariateSeries& series, const FourierGrid& grid) {
  return objective(d, ObjectiveContext(periodogram(series, grid)));
}

std::string_view method_label(Method m) noexcept {
  switch (m) {
    case Method::sh: return "Sh";
    case Method::tsh: return "TSh";
    case Method::ssh: return "SSh";
    case Method::ssh_star: return "SSh*";
  }
  return "?";
}

std::string_view method_cli_name(Method m) noexcept {
  switch (m) {
    case Method::sh: return "sh";
    case Method::tsh: return "tsh";
    case Method::ssh: return "ssh";
    case Method::ssh_star: return "ssh-star";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::sh, Method::tsh, Method::ssh, Method::ssh_star})
    if (text == method_label(m) || text == method_cli_name(m)) return m;
  throw InvalidArgument("unknown method '" + std::string(text) + "' (expected sh, tsh, ssh or ssh-star)");
}

bool is_smoothed(Method m) noexcept { return m == Method::ssh || m == Method::ssh_star; }

std::size_t GseConfig::bandwidth(std::size_t n) const {
  if (m == 0) return bandwidth_from_exponent(n, alpha);
  if (2 * m >= n) throw InvalidArgument("bandwidth m=" + std::to_string(m) + " must be below n/2");
  return m;
}

SpectralSequence method_spectrum(const MultivariateSeries& series, const FourierGrid& grid, Method method,
                                 double beta) {
  switch (method) {
    case Method::sh:
      return periodogram(series, grid);
    case Method::tsh:
      return tapered_periodogram(series, grid, cosine_bell_taper(series.rows(), series.cols()));
    case Method::ssh:
    case Method::ssh_star: {
      const std::size_t n = series.rows();
      const auto weights = bartlett_weights(n, halfwidth_from_exponent(n, beta), method == Method::ssh_star);
      return smoothed_periodogram(series, grid, weights);
    }
  }
  throw InvalidArgument("unknown method");
}

EstimateResult estimate(const MultivariateSeries& series, const GseConfig& config) {
  config.bounds.validate();
  const auto x = config.demean ? demean(series) : series;
  const auto grid = fourier_grid(x.rows(), config.bandwidth(x.rows()));
  const ObjectiveContext ctx(method_spectrum(x, grid, config.method, config.beta), config.cross_spectrum);
  return minimize(ctx, config.bounds, config.minimizer);
}

}  // namespace lrmem
