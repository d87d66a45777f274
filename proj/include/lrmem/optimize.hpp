#ifndef LRMEM_OPTIMIZE_HPP
#define LRMEM_OPTIMIZE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lrmem {

using Objective = std::function<double(std::span<const double>)>;

/// Axis-aligned box [lower, upper]^q.
struct Box {
  double lower;
  double upper;
  std::size_t dim;

  /// Clamps x into the box in place.
  void project(std::span<double> x) const noexcept;
};

struct GridSearchResult {
  std::vector<double> x;
  double value;
  std::size_t evaluations;
};

/// Exhaustive search over the lattice lower + k*step (plus `upper` itself)
/// in every coordinate, visited in lexicographic order. Strict improvement is
/// required to replace the incumbent, so ties resolve to the lexicographically
/// smallest point. Non-finite values never win.
GridSearchResult grid_search(const Objective& f, const Box& box, double step);

/// Per-axis lattice used by grid_search.
std::vector<double> grid_axis(const Box& box, double step);

struct SimplexSettings {
  double initial_step = 0.05;
  double tolerance = 1e-6;  ///< stop when max vertex distance from the best < tolerance
  int max_iterations = 500;
};

struct SimplexResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

/// Nelder-Mead with standard coefficients (1, 2, 1/2, 1/2). Trial points are
/// projected onto the box; +infinity marks infeasible points. The initial
/// simplex steps from `start` along each axis, inward when at a face.
SimplexResult nelder_mead(const Objective& f, const Box& box, std::span<const double> start,
                          const SimplexSettings& settings = {});

}  // namespace lrmem

#endif  // LRMEM_OPTIMIZE_HPP
