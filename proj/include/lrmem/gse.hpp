#ifndef LRMEM_GSE_HPP
#define LRMEM_GSE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lrmem/core.hpp"
#include "lrmem/optimize.hpp"

namespace lrmem {

/// How f_n enters G_hat. `full` uses f_n as computed. `real_part` replaces
/// f_n(lambda_j) by Re f_n(lambda_j), dropping the quadrature spectrum.
enum class CrossSpectrum { full, real_part };

/// Precomputed pieces of the objective for one spectral estimate f_n.
class ObjectiveContext {
 public:
  explicit ObjectiveContext(SpectralSequence spec, CrossSpectrum cross = CrossSpectrum::full);

  const SpectralSequence& spectrum() const noexcept { return spec_; }
  const FourierGrid& grid() const noexcept { return spec_.grid; }
  std::size_t dim() const noexcept { return q_; }
  std::size_t m() const noexcept { return spec_.grid.m(); }
  /// (1/m) sum_j log(lambda_j)
  double mean_log_lambda() const noexcept { return mean_log_lambda_; }
  CrossSpectrum cross_spectrum() const noexcept { return cross_; }

  std::span<const double> log_lambda() const noexcept { return log_lambda_; }
  std::span<const double> half_phase() const noexcept { return half_phase_; }
  /// f_rs(lambda_j) at entries[(r*q + s)*m + j-1].
  std::span<const std::complex<double>> entries() const noexcept { return entries_; }

 private:
  SpectralSequence spec_;
  std::size_t q_;
  CrossSpectrum cross_;
  double mean_log_lambda_;
  std::vector<double> log_lambda_;
  std::vector<double> half_phase_;  // (lambda_j - pi) / 2
  std::vector<std::complex<double>> entries_;
};

/// Lambda_j(d)^{-1} = diag(lambda^{d_k} e^{i (lambda - pi) d_k / 2}).
ComplexMatrix lambda_inverse(const MemoryParams& d, double lambda);

/// G_hat(d) = (1/m) sum_j Re[Lambda_j(d)^{-1} f_n(lambda_j) Lambda_j(d)^{-*}].
RealMatrix g_hat(const MemoryParams& d, const ObjectiveContext& ctx);
RealMatrix g_hat(std::span<const double> d, const ObjectiveContext& ctx);

/// S(d) = log det G_hat(d) - 2 (sum_k d_k) mean_log_lambda. Returns +infinity
/// when G_hat(d) is not positive definite.
double objective(const MemoryParams& d, const ObjectiveContext& ctx);
double objective(std::span<const double> d, const ObjectiveContext& ctx);

struct MinimizerSettings {
  double grid_step = 0.05;
  SimplexSettings simplex{};
};

struct EstimateResult {
  MemoryParams d_hat;
  double objective_value = 0.0;
  RealMatrix g_hat;
  int iterations = 0;
  bool converged = false;
  std::vector<double> asymptotic_sd;  ///< sqrt(diag(Sigma^{-1}) / m) with G0 = G_hat(d_hat)
  std::size_t m = 0;
};

/// Coarse lattice over the box followed by simplex refinement from the best
/// lattice point. Deterministic.
EstimateResult minimize(const ObjectiveContext& ctx, const ParamBounds& bounds, const MinimizerSettings& settings = {});

struct AsymptoticCovariance {
  RealMatrix sigma;       ///< 2[G0.G0^{-1} + I + (pi^2/4)(G0.G0^{-1} - I)]
  RealMatrix covariance;  ///< Sigma^{-1} / m
  std::vector<double> sd() const;
};

AsymptoticCovariance asymptotic_covariance(const RealMatrix& g0, std::size_t m);

/// S(d) with f_n the ordinary periodogram of a demeaned series.
double shimotsu_objective(const MemoryParams& d, const MultivariateSeries& series, const FourierGrid& grid);

/// Estimator variants by spectral input: ordinary periodogram (Sh), cosine-bell
/// tapered (TSh), Bartlett-smoothed with the k = -j term included (SSh) and
/// excluded (SSh*).
enum class Method { sh, tsh, ssh, ssh_star };

/// Table label: "Sh", "TSh", "SSh", "SSh*".
std::string_view method_label(Method m) noexcept;
/// CLI name: "sh", "tsh", "ssh", "ssh-star".
std::string_view method_cli_name(Method m) noexcept;
/// Accepts either spelling, case-sensitive.
Method parse_method(std::string_view text);
bool is_smoothed(Method m) noexcept;

struct GseConfig {
  Method method = Method::sh;
  double alpha = 0.85;
  std::size_t m = 0;  ///< overrides alpha when nonzero
  double beta = 0.9;  ///< smoothing half-width exponent, ell = floor(n^beta)
  bool demean = true;  ///< false when the process mean is known to be zero
  CrossSpectrum cross_spectrum = CrossSpectrum::full;
  ParamBounds bounds{};
  MinimizerSettings minimizer{};

  std::size_t bandwidth(std::size_t n) const;
};

/// f_n for `method`. SSh keeps the k = -j ordinate in the window, SSh* drops it.
SpectralSequence method_spectrum(const MultivariateSeries& series, const FourierGrid& grid, Method method,
                                 double beta);

/// Full pipeline: center (unless disabled), build the grid, estimate f_n, minimize.
EstimateResult estimate(const MultivariateSeries& series, const GseConfig& config);

}  // namespace lrmem

#endif  // LRMEM_GSE_HPP
