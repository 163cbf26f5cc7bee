#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dilutea/qproducts.hpp"

using namespace dilutea;
using Catch::Approx;

namespace {

std::complex<double> random_z(std::mt19937_64& rng, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rad = lo * std::pow(hi / lo, u(rng));
  return std::polar(rad, 2.0 * std::numbers::pi * u(rng));
}

// Independent oracle: fixed-length partial product, no tail logic.
double theta4_partial(double u, double q, int terms) {
  double p = 1.0;
  for (int n = 1; n <= terms; ++n) {
    p *= (1.0 - 2.0 * std::pow(q, 2 * n - 1) * std::cos(2.0 * u) +
          std::pow(q, 4 * n - 2)) *
         (1.0 - std::pow(q, 2 * n));
  }
  return p;
}

}  // namespace

TEST_CASE("qpoch1 degenerate cases") {
  CHECK(qpoch1(0.5, 0.0).real() == Approx(0.5).margin(1e-15));
  CHECK(qpoch1(0.5, 0.0).imag() == Approx(0.0).margin(1e-15));
  CHECK(qpoch1(0.0, 0.3).real() == Approx(1.0).margin(1e-15));
}

TEST_CASE("qpoch1 shift identity (z;q)/(zq;q) = 1-z") {
  const std::complex<double> z{0.2, 0.0}, q{0.1, 0.0};
  CHECK(std::abs(qpoch1(z, q) / qpoch1(z * q, q) - (1.0 - z)) < 1e-13);

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto zz = random_z(rng);
    const double qq = 0.01 + 0.94 * u(rng);
    worst = std::max(worst, std::abs(qpoch1(zz, qq) /
                                         (qpoch1(zz * qq, qq) * (1.0 - zz)) - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("qpoch1 domain errors") {
  CHECK_THROWS_AS(qpoch1(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(qpoch1(0.5, {1.2, 0.0}), std::domain_error);
  CHECK_THROWS_AS(qpoch1(std::numeric_limits<double>::quiet_NaN(), 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(qpoch1(0.5, 0.985), std::domain_error);
  Truncation tr;
  tr.allow_large_nome = true;
  CHECK_NOTHROW(qpoch1(0.5, 0.985, tr));
}

TEST_CASE("qpoch1 term cap sets the accuracy flag") {
  Truncation tr;
  tr.max_terms = 10;
  EvalStatus st;
  (void)qpoch1(0.5, 0.9, tr, &st);
  CHECK(st.hit_term_cap);
  EvalStatus ok;
  (void)qpoch1(0.5, 0.9, Truncation{}, &ok);
  CHECK_FALSE(ok.hit_term_cap);
}

TEST_CASE("qpoch1 monotone truncation") {
  // Halving tol moves the value by at most the looser tol; for |z| > 1 the
  // product magnitude is unbounded, so the bound is on the relative change.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto z = random_z(rng);
    const double q = 0.01 + 0.9 * u(rng);
    Truncation loose, tight;
    loose.tol = 1e-8;
    tight.tol = 5e-9;
    const auto vl = qpoch1(z, q, loose), vt = qpoch1(z, q, tight);
    CHECK(std::abs(vl - vt) < loose.tol * std::max(1.0, std::abs(vt)));
  }
}

TEST_CASE("qpoch2 collapses to qpoch1 when one nome vanishes") {
  const std::complex<double> z{0.3, 0.2};
  CHECK(std::abs(qpoch2(z, 0.2, 0.0) - qpoch1(z, 0.2)) < 1e-14);
}

TEST_CASE("qpoch2 double-product identities") {
  const std::complex<double> z{0.1, 0.0};
  const double p = 0.2, q = 0.3;
  CHECK(std::abs(qpoch2(z, p, q) / qpoch2(z * p, p, q) - qpoch1(z, q)) < 1e-13);
  CHECK(std::abs(qpoch2(z * q / p, p, q) / qpoch2(z, p, q) -
                 qpoch1(z * q / p, q) / qpoch1(z, p)) < 1e-13);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const auto zz = random_z(rng);
    const double pp = 0.05 + 0.85 * u(rng), qq = 0.05 + 0.85 * u(rng);
    worst = std::max(worst,
                     std::abs(qpoch2(zz, pp, qq) /
                              (qpoch2(zz * pp, pp, qq) * qpoch1(zz, qq)) - 1.0));
    worst = std::max(worst,
                     std::abs(qpoch2(zz * qq / pp, pp, qq) / qpoch2(zz, pp, qq) /
                              (qpoch1(zz * qq / pp, qq) / qpoch1(zz, pp)) - 1.0));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("elliptic_E basics and symmetries") {
  const std::complex<double> z{0.4, 0.3};
  CHECK(std::abs(elliptic_E(z, 0.0) - (1.0 - z)) < 1e-15);
  CHECK_THROWS_AS(elliptic_E(0.0, 0.3), std::domain_error);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_sym = 0.0, worst_quasi = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto zz = random_z(rng);
    const double qq = 0.01 + 0.89 * u(rng);
    worst_sym = std::max(worst_sym,
                         std::abs(elliptic_E(qq / zz, qq) / elliptic_E(zz, qq) - 1.0));
    worst_quasi = std::max(
        worst_quasi, std::abs(elliptic_E(qq * zz, qq) + elliptic_E(zz, qq) / zz));
  }
  CHECK(worst_sym < 1e-10);
  CHECK(worst_quasi < 1e-10);
}

TEST_CASE("theta4 values and periodicity") {
  CHECK(theta4(0.7, 0.0) == Approx(1.0).margin(1e-15));
  CHECK(theta4(0.3 + std::numbers::pi, 0.2) ==
        Approx(theta4(0.3, 0.2)).epsilon(1e-14));
  CHECK_THROWS_AS(theta4(0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(theta4(0.1, -0.2), std::domain_error);

  // 200-term partial product oracle.
  const double oracle = theta4_partial(std::numbers::pi / 4.0, 0.1, 200);
  CHECK(theta4(std::numbers::pi / 4.0, 0.1) == Approx(oracle).epsilon(1e-13));

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double uu = 4.0 * u(rng), qq = 0.9 * u(rng);
    CHECK(theta4(uu, qq) == Approx(theta4_partial(uu, qq, 400)).epsilon(1e-11));
  }
}
