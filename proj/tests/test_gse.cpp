#include <cmath>
#include <cstring>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "lrmem/errors.hpp"
#include "lrmem/gse.hpp"
#include "lrmem/simulator.hpp"
#include "lrmem/spectral.hpp"
#include "support.hpp"

using namespace lrmem;

namespace {

SpectralSequence constant_sequence(std::size_t n, std::size_t m, const ComplexMatrix& f) {
  SpectralSequence s{fourier_grid(n, m), {}};
  s.mats.assign(m, f);
  return s;
}

MultivariateSeries white_noise(std::size_t n, std::size_t q, std::uint64_t seed) {
  auto spec = Varfima0Spec::bivariate(0.0, 0.0, 0.0, n, 1, seed);
  if (q != 2) {
    spec.d.d.assign(q, 0.0);
    spec.innovation_corr = RealMatrix::Identity(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
  }
  return simulate(spec);
}

// Univariate local Whittle objective from direct periodogram ordinates.
double scalar_objective(double d, const std::vector<double>& lam, const std::vector<double>& pg) {
  double g = 0, ml = 0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    g += std::pow(lam[j], 2 * d) * pg[j];
    ml += std::log(lam[j]);
  }
  const double m = static_cast<double>(lam.size());
  return std::log(g / m) - 2 * d * ml / m;
}

double golden_section(const std::vector<double>& lam, const std::vector<double>& pg, double a, double b) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double c = b - r * (b - a), d = a + r * (b - a);
  while (b - a > 1e-10) {
    if (scalar_objective(c, lam, pg) < scalar_objective(d, lam, pg)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return (a + b) / 2;
}

}  // namespace

TEST_CASE("lambda inverse") {
  const auto id = lambda_inverse(MemoryParams{{0.0, 0.0}}, 1.3);
  CHECK((id - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  const auto at_pi = lambda_inverse(MemoryParams{{0.3, -0.2}}, kPi);
  CHECK(at_pi(0, 0).real() == doctest::Approx(std::pow(kPi, 0.3)).epsilon(1e-15));
  CHECK(at_pi(1, 1).real() == doctest::Approx(std::pow(kPi, -0.2)).epsilon(1e-15));
  CHECK(at_pi(0, 0).imag() == 0.0);
  CHECK(at_pi(0, 1) == std::complex<double>(0.0, 0.0));

  const auto e = lambda_inverse(MemoryParams{{0.4}}, kPi / 4)(0, 0);
  CHECK(std::abs(e) == doctest::Approx(std::pow(kPi / 4, 0.4)).epsilon(1e-14));
  CHECK(std::arg(e) == doctest::Approx((kPi / 4 - kPi) * 0.2).epsilon(1e-14));
}

TEST_CASE("g_hat at d = 0 is the mean of Re f") {
  const auto x = demean(test::gaussian_series(200, 3, 3));
  const auto grid = fourier_grid(200, 40);
  const ObjectiveContext ctx(periodogram(x, grid));
  RealMatrix expected = RealMatrix::Zero(3, 3);
  for (const auto& f : ctx.spectrum().mats) expected += f.real();
  expected /= 40.0;
  const auto g = g_hat(MemoryParams{{0, 0, 0}}, ctx);
  CHECK((g - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("g_hat hand case") {
  // lambda = {pi/2, pi}, f = {1, 2}, d = 1/2: (pi/4) + pi.
  const MemoryParams d{{0.5}};
  const double lam[] = {kPi / 2, kPi};
  const double f[] = {1.0, 2.0};
  double acc = 0;
  for (int j = 0; j < 2; ++j) {
    const auto a = lambda_inverse(d, lam[j]);
    acc += (a * ComplexMatrix::Constant(1, 1, f[j]) * a.adjoint())(0, 0).real();
  }
  CHECK(acc / 2 == doctest::Approx(kPi / 4 + kPi).epsilon(1e-15));
  const double s_hand = std::log(kPi / 4 + kPi) - 2 * 0.5 * 0.5 * (std::log(kPi / 2) + std::log(kPi));
  CHECK(std::log(acc / 2) - 2 * 0.5 * 0.5 * (std::log(lam[0]) + std::log(lam[1])) ==
        doctest::Approx(s_hand).epsilon(1e-14));

  // Same formula through a context on a valid grid: n = 8, lambda = {pi/4, pi/2}.
  SpectralSequence s{fourier_grid(8, 2), {ComplexMatrix::Constant(1, 1, 1.0), ComplexMatrix::Constant(1, 1, 2.0)}};
  const ObjectiveContext ctx(s);
  CHECK(g_hat(d, ctx)(0, 0) == doctest::Approx(0.5 * (kPi / 4 + 2 * kPi / 2)).epsilon(1e-15));
  CHECK(objective(d, ctx) ==
        doctest::Approx(std::log(kPi / 8 + kPi / 2) - 0.5 * (std::log(kPi / 4) + std::log(kPi / 2))).epsilon(1e-14));
}

TEST_CASE("real cross spectrum mode") {
  const auto x = demean(simulate(Varfima0Spec::bivariate(0.1, 0.4, 0.8, 600, 5000, 12)));
  const auto grid = fourier_grid(600, 120);
  const auto pg = periodogram(x, grid);
  const ObjectiveContext full(pg);
  const ObjectiveContext real(pg, CrossSpectrum::real_part);
  CHECK(real.cross_spectrum() == CrossSpectrum::real_part);
  for (const auto& d : {MemoryParams{{0.1, 0.4}}, MemoryParams{{-0.2, 0.3}}, MemoryParams{{0.25, 0.25}}}) {
    // Direct sums with lambda_inverse: Re[L f L^*] and Re[L Re(f) L^*].
    RealMatrix want_full = RealMatrix::Zero(2, 2), want_real = RealMatrix::Zero(2, 2);
    for (std::size_t j = 1; j <= grid.m(); ++j) {
      const auto a = lambda_inverse(d, grid.lambda(j));
      const ComplexMatrix& f = pg.mats[j - 1];
      want_full += (a * f * a.adjoint()).real();
      want_real += (a * ComplexMatrix(f.real().cast<std::complex<double>>()) * a.adjoint()).real();
    }
    want_full /= static_cast<double>(grid.m());
    want_real /= static_cast<double>(grid.m());
    CHECK((g_hat(d, full) - want_full).cwiseAbs().maxCoeff() < 1e-12 * want_full.cwiseAbs().maxCoeff());
    CHECK((g_hat(d, real) - want_real).cwiseAbs().maxCoeff() < 1e-12 * want_real.cwiseAbs().maxCoeff());
    // Diagonals never see the quadrature spectrum.
    CHECK(std::abs(g_hat(d, full)(0, 0) - g_hat(d, real)(0, 0)) < 1e-12 * want_full(0, 0));
  }
  // With a real f_n the two modes coincide.
  ComplexMatrix f(2, 2);
  f << 2.0, 0.7, 0.7, 1.0;
  const auto seq = constant_sequence(200, 30, f);
  const MemoryParams d{{0.1, 0.3}};
  CHECK((g_hat(d, ObjectiveContext(seq)) - g_hat(d, ObjectiveContext(seq, CrossSpectrum::real_part)))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("objective with identity spectrum") {
  const ObjectiveContext ctx(constant_sequence(100, 20, ComplexMatrix::Identity(2, 2)));
  CHECK(std::abs(objective(MemoryParams{{0, 0}}, ctx)) < 1e-15);
}

TEST_CASE("g_hat symmetry and infeasibility") {
  const auto x = demean(test::gaussian_series(300, 3, 17));
  const ObjectiveContext ctx(smoothed_periodogram(x, fourier_grid(300, 60), bartlett_weights(300, 10)));
  for (const auto& d : {MemoryParams{{0.1, -0.3, 0.45}}, MemoryParams{{-0.49, 0.2, 0.0}}}) {
    const auto g = g_hat(d, ctx);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  ComplexMatrix singular = ComplexMatrix::Ones(2, 2);
  const ObjectiveContext bad(constant_sequence(100, 20, singular));
  CHECK(std::isinf(objective(MemoryParams{{0.1, 0.1}}, bad)));
  CHECK_THROWS_AS(g_hat(MemoryParams{{0.1}}, bad), InvalidArgument);
}

TEST_CASE("objective shifts by 2q log c under scaling") {
  const auto x = demean(simulate(Varfima0Spec::bivariate(0.2, 0.3, 0.4, 1000, 5000, 8)));
  const auto grid = fourier_grid(1000, 354);
  const double c = 10.0;
  for (Method method : {Method::sh, Method::tsh, Method::ssh, Method::ssh_star}) {
    const ObjectiveContext a(method_spectrum(x, grid, method, 0.9));
    const ObjectiveContext b(method_spectrum(x.scaled(c), grid, method, 0.9));
    for (const auto& d : {MemoryParams{{0, 0}}, MemoryParams{{0.2, 0.3}}, MemoryParams{{-0.4, 0.45}}}) {
      CHECK(std::abs(objective(d, b) - objective(d, a) - 2 * 2 * std::log(c)) < 1e-8);
    }
  }
}

TEST_CASE("asymptotic covariance") {
  const auto ident = asymptotic_covariance(RealMatrix::Identity(2, 2), 354);
  CHECK((ident.sigma - 4 * RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  for (double s : ident.sd()) CHECK(s == doctest::Approx(1 / (2 * std::sqrt(354.0))).epsilon(1e-14));
  CHECK(ident.sd()[0] == doctest::Approx(0.02657).epsilon(1e-3));

  RealMatrix g(2, 2);
  g << 1, 0.6, 0.6, 1;
  RealMatrix inv(2, 2);
  inv << 1, -0.6, -0.6, 1;
  inv /= 0.64;
  const RealMatrix had = g.cwiseProduct(inv);
  const RealMatrix id = RealMatrix::Identity(2, 2);
  const RealMatrix oracle = 2 * (had + id + (kPi * kPi / 4) * (had - id));
  const auto ac = asymptotic_covariance(g, 100);
  CHECK((ac.sigma - oracle).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((ac.covariance - oracle.inverse() / 100.0).cwiseAbs().maxCoeff() < 1e-12);

  for (double rho = -0.95; rho < 0.96; rho += 0.05) {
    RealMatrix gr(2, 2);
    gr << 1, rho, rho, 1;
    const auto a = asymptotic_covariance(gr, 354);
    CHECK((a.sigma - a.sigma.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(a.sigma);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
  RealMatrix sing(2, 2);
  sing << 1, 1, 1, 1;
  CHECK_THROWS_AS(asymptotic_covariance(sing, 10), InvalidArgument);
}

TEST_CASE("shimotsu objective equals the periodogram context") {
  const auto x = demean(test::gaussian_series(400, 2, 44));
  const auto grid = fourier_grid(400, 80);
  const ObjectiveContext ctx(periodogram(x, grid));
  for (const auto& d : {MemoryParams{{0.1, 0.2}}, MemoryParams{{-0.3, 0.4}}})
    CHECK(std::abs(shimotsu_objective(d, x, grid) - objective(d, ctx)) <= 1e-14 * std::abs(objective(d, ctx)));
}

TEST_CASE("argmin invariances") {
  const auto x = simulate(Varfima0Spec::bivariate(0.1, 0.35, 0.5, 1000, 20000, 77));
  for (Method method : {Method::sh, Method::tsh, Method::ssh, Method::ssh_star}) {
    GseConfig cfg;
    cfg.method = method;
    const auto base = estimate(x, cfg);
    const auto scaled = estimate(x.scaled(7.5), cfg);
    const std::size_t perm[] = {1, 0};
    const auto swapped = estimate(x.permuted(perm), cfg);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(std::abs(base.d_hat[k] - scaled.d_hat[k]) < 1e-6);
      CHECK(std::abs(base.d_hat[k] - swapped.d_hat[1 - k]) < 1e-6);
    }
    CHECK((base.g_hat - base.g_hat.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(base.g_hat.determinant() > 0.0);
    ParamBounds b;
    CHECK(b.contains(base.d_hat.d));
  }
}

TEST_CASE("q = 1 matches golden-section search") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto spec = Varfima0Spec::bivariate(0.3, 0.0, 0.0, 512, 10000, seed);
    spec.d.d.resize(1);
    spec.innovation_corr = RealMatrix::Identity(1, 1);
    const auto x = demean(simulate(spec));
    const std::size_t m = bandwidth_from_exponent(512, 0.8);
    std::vector<double> lam, pg;
    for (std::size_t j = 1; j <= m; ++j) {
      lam.push_back(kTwoPi * static_cast<double>(j) / 512.0);
      pg.push_back(test::direct_periodogram(x, static_cast<long long>(j))(0, 0).real());
    }
    const double oracle = golden_section(lam, pg, -0.499, 0.499);
    GseConfig cfg;
    cfg.alpha = 0.8;
    const auto r = estimate(x, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.d_hat[0] - oracle) < 1e-5);
    CHECK(std::abs(r.objective_value - scalar_objective(oracle, lam, pg)) < 1e-9);
  }
}

TEST_CASE("white noise") {
  int close = 0, ordered = 0;
  const int seeds = 100;
  std::vector<double> all;
  for (int s = 0; s < seeds; ++s) {
    const auto x = demean(white_noise(1000, 2, 5000 + static_cast<std::uint64_t>(s)));
    GseConfig cfg;
    const auto r = estimate(x, cfg);
    if (std::max(std::abs(r.d_hat[0]), std::abs(r.d_hat[1])) < 0.05) ++close;
    all.push_back(r.d_hat[0]);
    all.push_back(r.d_hat[1]);

    const auto grid = fourier_grid(1000, 354);
    if (shimotsu_objective(MemoryParams{{0, 0}}, x, grid) < shimotsu_objective(MemoryParams{{0.4, 0.4}}, x, grid))
      ++ordered;
  }
  // Limiting law at G = I: independent coordinates with sd 1/(2 sqrt m), so
  // P(max|d_hat| < 0.05) = erf(0.05 / (sd sqrt 2))^2, about 0.884 at m = 354.
  const double sd = asymptotic_covariance(RealMatrix::Identity(2, 2), 354).sd()[0];
  const double p = std::pow(std::erf(0.05 / (sd * std::sqrt(2.0))), 2);
  MESSAGE("white noise: max|d_hat| < 0.05 in " << close << " of " << seeds << " seeds, expected " << 100 * p);
  CHECK(std::abs(close - seeds * p) <= 4 * std::sqrt(seeds * p * (1 - p)));
  CHECK(ordered >= 95);
}

TEST_CASE("estimation is deterministic") {
  const auto x = simulate(Varfima0Spec::bivariate(0.2, 0.3, 0.6, 1000, 5000, 3));
  GseConfig cfg;
  cfg.method = Method::ssh;
  const auto a = estimate(x, cfg);
  const auto b = estimate(x, cfg);
  CHECK(std::memcmp(a.d_hat.d.data(), b.d_hat.d.data(), 2 * sizeof(double)) == 0);
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.iterations == b.iterations);
  CHECK(a.asymptotic_sd == b.asymptotic_sd);
}

TEST_CASE("methods and config") {
  CHECK(parse_method("SSh*") == Method::ssh_star);
  CHECK(parse_method("ssh-star") == Method::ssh_star);
  CHECK(parse_method("TSh") == Method::tsh);
  CHECK(method_label(Method::ssh) == "SSh");
  CHECK(method_cli_name(Method::ssh_star) == "ssh-star");
  CHECK_THROWS_AS(parse_method("bogus"), InvalidArgument);
  CHECK(is_smoothed(Method::ssh));
  CHECK_FALSE(is_smoothed(Method::tsh));

  GseConfig cfg;
  CHECK(cfg.bandwidth(1000) == 354);
  cfg.m = 500;
  CHECK_THROWS_AS(cfg.bandwidth(1000), InvalidArgument);
  cfg.m = 0;
  cfg.bounds.eps1 = 0.0;
  CHECK_THROWS_AS(estimate(white_noise(100, 2, 1), cfg), InvalidArgument);
}

TEST_CASE("centering switch") {
  // Shifting the data moves only the zero-frequency ordinate, so Sh is
  // unaffected either way while SSh sees the shift unless it is centered.
  const auto x = simulate(Varfima0Spec::bivariate(0.2, 0.3, 0.0, 500, 5000, 9));
  std::vector<double> v(x.data().begin(), x.data().end());
  for (double& e : v) e += 4.0;
  const MultivariateSeries shifted(500, 2, v);
  GseConfig keep;
  keep.demean = false;
  GseConfig center;
  for (Method method : {Method::sh, Method::ssh, Method::ssh_star}) {
    keep.method = center.method = method;
    const auto a = estimate(shifted, center);
    const auto b = estimate(x, center);
    const auto c = estimate(shifted, keep);
    CHECK(std::abs(a.d_hat[0] - b.d_hat[0]) < 1e-6);
    if (method == Method::ssh)
      CHECK(c.d_hat[0] > a.d_hat[0] + 0.01);
    else
      CHECK(std::abs(c.d_hat[0] - a.d_hat[0]) < 1e-6);
  }
}
