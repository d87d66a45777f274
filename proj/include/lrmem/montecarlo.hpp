#ifndef LRMEM_MONTECARLO_HPP
#define LRMEM_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrmem/core.hpp"
#include "lrmem/gse.hpp"

namespace lrmem {

/// One experiment cell: estimator, bandwidth exponent, smoothing exponent
/// (smoothed methods only), innovation correlation and true d.
struct CellKey {
  Method method = Method::sh;
  double alpha = 0.85;
  std::optional<double> beta;
  double rho = 0.0;
  MemoryParams d_true;

  /// Canonical text form, e.g. "SSh|beta=0.9|alpha=0.85|rho=0|d=0.1,0.4".
  std::string label() const;
  /// FNV-1a of label(); feeds the replication stream keys.
  std::uint64_t hash() const noexcept;
};

struct ExperimentGrid {
  std::size_t n = 1000;
  std::size_t replications = 200;
  std::vector<MemoryParams> d_list;
  std::vector<double> rho_list;
  std::vector<Method> methods;
  std::vector<double> alpha_list;
  std::vector<double> beta_list;
  std::size_t truncation = 50000;
  std::uint64_t master_seed = 20130501;
  /// Subtract the sample mean before estimation. Off by default: the
  /// simulated processes have known mean zero.
  bool demean = false;
  /// Drop the quadrature spectrum inside G_hat.
  /// JSON: "cross_spectrum": "real" (default) or "full".
  CrossSpectrum cross_spectrum = CrossSpectrum::real_part;
  ParamBounds bounds{};

  /// The four-method design over d in {(.1,.4),(.2,.3),(.1,.3),(.3,.4)},
  /// rho in {0,.3,.6,.8}, alpha in {.65,.85}, beta in {.7,.9} at desk scale
  /// (R = 200).
  static ExperimentGrid standard_design();

  /// Parses a JSON object; absent keys keep standard_design() values.
  static ExperimentGrid from_json(std::string_view text);

  void validate() const;

  /// Cartesian product in the order method, beta, alpha, rho, d; beta is
  /// only iterated for smoothed methods.
  std::vector<CellKey> cells() const;

  /// Seed of replication r (0-based) of `key`.
  std::uint64_t replication_seed(const CellKey& key, std::size_t r) const noexcept;
};

struct CellSummary {
  CellKey key;
  std::vector<double> mean;
  std::vector<double> sd;   ///< sample standard deviation, divisor R-1 (0 when R = 1)
  std::vector<double> mse;  ///< mean of (d_hat - d_true)^2
  std::size_t replications = 0;
  std::size_t non_converged = 0;
};

struct CellResult {
  CellSummary summary;
  std::vector<MemoryParams> raw;  ///< d_hat per replication, in replication order
};

/// Aggregates raw estimates in index order.
CellSummary summarize(const CellKey& key, std::span<const MemoryParams> raw, std::size_t non_converged = 0);

/// One replication: simulate with the derived seed, estimate with the cell's
/// method.
EstimateResult run_replication(const ExperimentGrid& grid, const CellKey& key, std::size_t r);

/// All R replications of one cell; `threads` workers, identical output for
/// any worker count.
CellResult run_cell(const ExperimentGrid& grid, const CellKey& key, std::size_t threads = 1);

/// Every cell of the grid, in cells() order.
std::vector<CellResult> run_grid(const ExperimentGrid& grid, std::size_t threads = 1);

/// Columns: method, beta, alpha, rho, d_true_1..q, coord, mean, sd, mse; one
/// row per (cell, coordinate); statistics with 4 decimals.
std::string emit_table(std::span<const CellSummary> summaries);

/// Columns: replication, d_hat_1..q at 17 significant digits.
std::string emit_raw_estimates(std::span<const MemoryParams> raw);

}  // namespace lrmem

#endif  // LRMEM_MONTECARLO_HPP
