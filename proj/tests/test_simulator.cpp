#include <cmath>
#include <cstring>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "lrmem/errors.hpp"
#include "lrmem/rng.hpp"
#include "lrmem/simulator.hpp"

using namespace lrmem;

namespace {

double sample_variance(std::span<const double> x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(x.size() - 1);
}

}  // namespace

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-14));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-12));
  // round trip through erfc
  for (double p : {1e-6, 0.01, 0.2, 0.45, 0.7, 0.99}) {
    const double z = normal_quantile(p);
    CHECK(0.5 * std::erfc(-z / std::sqrt(2.0)) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("counter rng") {
  CounterRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CounterRng c(42);
  CHECK(c.at(57) == CounterRng(42, 57).next_u64());
  CHECK(hash_words({1, 2}) != hash_words({2, 1}));
  CounterRng u(7);
  double lo = 1, hi = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = u.next_uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("fracdiff coefficients") {
  const auto zero = fracdiff_coeffs(0.0, 5);
  CHECK(zero == std::vector<double>{1, 0, 0, 0, 0});

  const auto c = fracdiff_coeffs(0.4, 3);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(0.28).epsilon(1e-15));

  const double d = 0.3;
  const auto psi = fracdiff_coeffs(d, 1000);
  double worst = 0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double oracle = std::exp(std::lgamma(kk + d) - std::lgamma(d) - std::lgamma(kk + 1));
    worst = std::max(worst, std::abs(psi[k] - oracle) / oracle);
  }
  CHECK(worst < 1e-10);

  CHECK_THROWS_AS(fracdiff_coeffs(0.5, 3), InvalidArgument);
  CHECK_THROWS_AS(fracdiff_coeffs(-0.5, 3), InvalidArgument);
}

TEST_CASE("coefficient tails") {
  for (double d : {0.1, 0.25, 0.45}) {
    const auto psi = fracdiff_coeffs(d, 20001);
    for (double v : psi) REQUIRE(v > 0.0);
    const double ratio = psi[20000] / psi[10000];
    CHECK(std::abs(ratio / std::pow(2.0, d - 1) - 1) < 0.05);
  }
  for (double d : {-0.1, -0.4}) {
    const auto psi = fracdiff_coeffs(d, 40001);
    for (std::size_t k = 1; k < psi.size(); ++k) REQUIRE(psi[k] < 0.0);
    auto increment = [&](std::size_t K) {
      double s = 0;
      for (std::size_t k = K; k < 2 * K; ++k) s += std::abs(psi[k]);
      return s;
    };
    CHECK(increment(20000) < increment(10000));
    CHECK(increment(10000) < increment(1000));
  }
}

TEST_CASE("simulation settings are validated") {
  auto s = Varfima0Spec::bivariate(0.1, 0.4, 0.5, 100, 50, 1);
  CHECK_NOTHROW(s.validate());
  auto bad = s;
  bad.d.d[0] = 0.5;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.innovation_corr(0, 1) = 1.2;
  bad.innovation_corr(1, 0) = 1.2;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.innovation_corr(0, 1) = 0.3;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.innovation_corr(1, 1) = 2.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = s;
  bad.truncation = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  CHECK_THROWS_AS(simulate(Varfima0Spec::bivariate(0.1, 0.1, 1.0, 100, 50, 1)), InvalidArgument);
}

TEST_CASE("d = 0 reproduces innovations") {
  const auto spec = Varfima0Spec::bivariate(0.0, 0.0, 0.7, 200, 300, 99);
  const auto eps = draw_innovations(spec);
  const auto x = simulate(spec);
  const std::size_t rows = spec.n + spec.truncation;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < spec.n; ++t) REQUIRE(x(t, i) == eps[i * rows + spec.truncation + t]);
}

TEST_CASE("innovation cross-correlation") {
  const auto x = simulate(Varfima0Spec::bivariate(0.0, 0.0, 0.6, 100000, 1, 2024));
  const auto a = x.column(0), b = x.column(1);
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / 1e5;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / 1e5;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    sab += (a[t] - ma) * (b[t] - mb);
    saa += (a[t] - ma) * (a[t] - ma);
    sbb += (b[t] - mb) * (b[t] - mb);
  }
  CHECK(std::abs(sab / std::sqrt(saa * sbb) - 0.6) < 0.01);
  CHECK(std::abs(saa / 1e5 - 1.0) < 0.02);
}

TEST_CASE("determinism") {
  const auto spec = Varfima0Spec::bivariate(0.2, 0.35, 0.3, 1000, 50000, 5);
  const auto a = simulate(spec);
  const auto b = simulate(spec);
  CHECK(std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(double)) == 0);
  auto other = spec;
  other.seed = 6;
  CHECK_FALSE(simulate(other) == a);
}

TEST_CASE("fft and direct convolution agree") {
  for (std::size_t trunc : {1ul, 7ul, 500ul, 3000ul}) {
    const auto spec = Varfima0Spec::bivariate(0.45, -0.3, 0.2, 400, trunc, 11);
    const auto eps = draw_innovations(spec);
    const std::size_t rows = spec.n + spec.truncation;
    const auto direct = filter_innovations(eps, rows, spec.d, trunc, spec.n, ConvolutionPath::direct);
    const auto fast = filter_innovations(eps, rows, spec.d, trunc, spec.n, ConvolutionPath::fft);
    double worst = 0;
    for (std::size_t k = 0; k < direct.data().size(); ++k)
      worst = std::max(worst, std::abs(direct.data()[k] - fast.data()[k]));
    CHECK(worst < 1e-8);

    // Hand oracle for one entry.
    const auto psi = fracdiff_coeffs(0.45, trunc);
    double s = 0;
    const std::size_t t = spec.n - 1 + spec.truncation;
    for (std::size_t k = 0; k < trunc; ++k) s += psi[k] * eps[t - k];
    CHECK(std::abs(direct(spec.n - 1, 0) - s) < 1e-10);
  }
}

TEST_CASE("filtering is linear") {
  const auto spec = Varfima0Spec::bivariate(0.3, 0.1, 0.5, 300, 2000, 3);
  auto eps = draw_innovations(spec);
  const std::size_t rows = spec.n + spec.truncation;
  for (auto path : {ConvolutionPath::direct, ConvolutionPath::fft}) {
    const auto x = filter_innovations(eps, rows, spec.d, spec.truncation, spec.n, path);
    std::vector<double> doubled(eps);
    for (double& v : doubled) v *= 2.0;
    const auto y = filter_innovations(doubled, rows, spec.d, spec.truncation, spec.n, path);
    for (std::size_t k = 0; k < x.data().size(); ++k) REQUIRE(y.data()[k] == 2.0 * x.data()[k]);
  }
}

TEST_CASE("variance increases with d") {
  double prev = 0;
  for (double d : {0.0, 0.2, 0.4}) {
    double total = 0;
    for (std::uint64_t r = 0; r < 50; ++r) {
      const auto x = simulate(Varfima0Spec::bivariate(d, d, 0.0, 1000, 5000, 100 + r));
      total += sample_variance(x.column(0));
    }
    const double mean = total / 50;
    CHECK(mean > prev);
    prev = mean;
  }
}
