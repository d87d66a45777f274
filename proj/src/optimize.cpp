#include "lrmem/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lrmem/errors.hpp"

namespace lrmem {

void Box::project(std::span<double> x) const noexcept {
  for (double& v : x) v = std::clamp(v, lower, upper);
}

std::vector<double> grid_axis(const Box& box, double step) {
  if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
  if (!(box.lower <= box.upper)) throw InvalidArgument("empty search box");
  std::vector<double> axis;
  for (std::size_t k = 0;; ++k) {
    const double v = box.lower + static_cast<double>(k) * step;
    if (v > box.upper) break;
    axis.push_back(v);
  }
  if (axis.back() < box.upper) axis.push_back(box.upper);
  return axis;
}

GridSearchResult grid_search(const Objective& f, const Box& box, double step) {
  if (box.dim == 0) throw InvalidArgument("search dimension must be positive");
  const auto axis = grid_axis(box, step);
  const std::size_t q = box.dim;
  std::vector<std::size_t> idx(q, 0);
  std::vector<double> x(q, axis.front());
  GridSearchResult best{x, std::numeric_limits<double>::infinity(), 0};
  bool found = false;
  while (true) {
    for (std::size_t k = 0; k < q; ++k) x[k] = axis[idx[k]];
    const double v = f(x);
    ++best.evaluations;
    if (std::isfinite(v) && (!found || v < best.value)) {
      best.x = x;
      best.value = v;
      found = true;
    }
    // Odometer increment, last coordinate fastest => lexicographic order.
    std::size_t k = q;
    while (k > 0) {
      --k;
      if (++idx[k] < axis.size()) break;
      idx[k] = 0;
      if (k == 0) return best;
    }
  }
}

SimplexResult nelder_mead(const Objective& f, const Box& box, std::span<const double> start,
                          const SimplexSettings& settings) {
  const std::size_t q = start.size();
  if (q == 0) throw InvalidArgument("simplex dimension must be positive");
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  std::vector<std::vector<double>> v(q + 1, std::vector<double>(start.begin(), start.end()));
  box.project(v[0]);
  for (std::size_t k = 0; k < q; ++k) {
    double step = settings.initial_step;
    if (v[0][k] + step > box.upper) step = -step;
    v[k + 1] = v[0];
    v[k + 1][k] += step;
    box.project(v[k + 1]);
  }
  std::vector<double> fv(q + 1);
  for (std::size_t i = 0; i <= q; ++i) fv[i] = f(v[i]);

  std::vector<std::size_t> order(q + 1);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    // Stable so equal values keep their previous relative order.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> v2(q + 1);
    std::vector<double> f2(q + 1);
    for (std::size_t i = 0; i <= q; ++i) {
      v2[i] = std::move(v[order[i]]);
      f2[i] = fv[order[i]];
    }
    v.swap(v2);
    fv.swap(f2);
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i <= q; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < q; ++k) s += (v[i][k] - v[0][k]) * (v[i][k] - v[0][k]);
      d = std::max(d, std::sqrt(s));
    }
    return d;
  };
  auto toward = [&](const std::vector<double>& c, const std::vector<double>& p, double coef) {
    std::vector<double> x(q);
    for (std::size_t k = 0; k < q; ++k) x[k] = c[k] + coef * (p[k] - c[k]);
    box.project(x);
    return x;
  };

  int iter = 0;
  bool converged = false;
  std::vector<double> centroid(q);
  for (;;) {
    sort_vertices();
    if (diameter() < settings.tolerance) {
      converged = true;
      break;
    }
    if (iter >= settings.max_iterations) break;
    ++iter;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t k = 0; k < q; ++k) centroid[k] += v[i][k];
    for (double& c : centroid) c /= static_cast<double>(q);

    const auto xr = toward(centroid, v[q], -kReflect);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const auto xe = toward(centroid, xr, kExpand);
      const double fe = f(xe);
      if (fe < fr) {
        v[q] = xe;
        fv[q] = fe;
      } else {
        v[q] = xr;
        fv[q] = fr;
      }
      continue;
    }
    if (fr < fv[q - 1]) {
      v[q] = xr;
      fv[q] = fr;
      continue;
    }
    const bool outside = fr < fv[q];
    const auto xc = toward(centroid, outside ? xr : v[q], kContract);
    const double fc = f(xc);
    if (fc < (outside ? fr : fv[q])) {
      v[q] = xc;
      fv[q] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= q; ++i) {
      v[i] = toward(v[0], v[i], kShrink);
      fv[i] = f(v[i]);
    }
  }
  return SimplexResult{v[0], fv[0], iter, converged};
}

}  // namespace lrmem
