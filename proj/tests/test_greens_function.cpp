#include <cmath>

#include <doctest.h>

#include "prabhakar/greens_function.hpp"

using namespace prabhakar;
using namespace prabhakar::greens;

namespace {

BVPConfig cfg_of(double a, double b, double xi, double beta, double rho,
                 double mu, double gamma, double omega) {
  return {a, b, xi, beta, {rho, mu, gamma, omega, a}};
}

}  // namespace

TEST_SUITE_BEGIN("greens");

TEST_CASE("validate_config basics") {
  const auto ok = cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.0, 0.0);
  const auto check = validate_config(ok);
  CHECK(check.valid());
  // beta = 0, omega = 0: D = 1/Gamma(1.5)
  CHECK(check.denom == doctest::Approx(1.1283791670955125739).epsilon(1e-13));

  const auto bad = cfg_of(0, 1, 1.0, 0.0, 1.0, 2.5, 0.0, 0.0);
  CHECK_FALSE(validate_config(bad).ordering);
  CHECK_FALSE(validate_config(bad).valid());

  auto neg = cfg_of(0, 1, 0.5, -0.2, 1.0, 2.5, 0.0, 0.0);
  CHECK_FALSE(validate_config(neg).beta_nonneg);

  auto mismatch = cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.0, 0.0);
  mismatch.spec.a = 0.3;
  CHECK_THROWS_AS(validate_config(mismatch), config_error);
}

TEST_CASE("beta threshold for denominator positivity") {
  // bisect the validator's flag and compare to the closed-form root of D
  auto base = cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.5, 0.4);
  const GreenFn g(base);
  const double beta_star = g.dbar() / g.A(base.xi);

  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto c = base;
    c.beta = mid;
    (validate_config(c).denom_positive ? lo : hi) = mid;
  }
  CHECK(std::abs(lo - beta_star) < 1e-9);

  auto above = base;
  above.beta = beta_star * 1.01;
  CHECK_FALSE(validate_config(above).denom_positive);
  auto below = base;
  below.beta = beta_star * 0.99;
  CHECK(validate_config(below).denom_positive);
}

TEST_CASE("green_eval structure") {
  const auto cfg = cfg_of(0, 1, 0.5, 0.1, 1.0, 2.5, 0.5, 0.3);
  // t = a: both branches vanish
  for (double s : {0.0, 0.3, 0.9}) {
    const auto e = green_eval(0.0, s, cfg);
    CHECK(e.value == 0.0);
  }
  // diagonal: the subtracted term is exactly zero, branches agree
  const GreenFn g(cfg);
  for (double t : {0.2, 0.5, 0.8}) {
    CHECK(g.P(0.0) == 0.0);
    const double b1 = g.A(t) * g.B(t) / g.dbar() - g.P(0.0);
    const double b2 = g.A(t) * g.B(t) / g.dbar();
    CHECK(std::abs(b1 - b2) <= 1e-12);
  }
  // s = t = b
  CHECK(green_eval(1.0, 1.0, cfg).value == 0.0);
  CHECK_THROWS_AS(green_eval(-0.1, 0.5, cfg), config_error);
}

TEST_CASE("gamma = 0 closed form for G(b, .)") {
  const auto cfg = cfg_of(0, 1, 0.5, 0.1, 1.0, 2.5, 0.0, 0.7);
  const GreenFn g(cfg);
  const double gmu = std::tgamma(2.5);
  double scale = 0.0, worst = 0.0;
  const auto ss = chebyshev_nodes(0.0, 1.0, 101);
  for (double s : ss)
    scale = std::max(scale, std::pow(1.0 - s, 0.5) * s);
  for (double s : ss) {
    const double closed = std::pow(1.0 - s, 0.5) * s;
    worst = std::max(worst, std::abs(gmu * g(1.0, s) - closed));
  }
  CHECK(worst / scale < 1e-10);
}

TEST_CASE("amplification factors") {
  const auto zero = cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.5, 0.3);
  const auto amp0 = amplification_factors(zero);
  CHECK(amp0.lambda_b == 0.0);
  CHECK(amp0.lambda_xi == 0.0);

  // hand-evaluated Gamma-function oracle at gamma = 0, omega = 0
  const auto cfg = cfg_of(0, 1, 0.5, 0.1, 1.0, 2.5, 0.0, 0.0);
  const auto amp = amplification_factors(cfg);
  CHECK(amp.lambda_b ==
        doctest::Approx(0.068275946150498160143).epsilon(1e-12));
  CHECK(amp.lambda_xi ==
        doctest::Approx(0.024139192257472402148).epsilon(1e-12));
  CHECK(amp.lambda_b >= amp.lambda_xi);

  for (double omega : {0.0, 0.3, 0.8}) {
    const auto c = cfg_of(0, 1, 0.5, 0.07, 0.8, 2.3, 0.5, omega);
    const auto a = amplification_factors(c);
    CHECK(a.lambda_b >= a.lambda_xi);
    CHECK(a.lambda_xi >= 0.0);
  }
}

TEST_CASE("beta = 0 leaves G independent of xi") {
  const auto c1 = cfg_of(0, 1, 0.3, 0.0, 1.0, 2.5, 0.5, 0.3);
  const auto c2 = cfg_of(0, 1, 0.8, 0.0, 1.0, 2.5, 0.5, 0.3);
  const GreenFn g1(c1), g2(c2);
  for (double t : {0.2, 0.6, 0.9})
    for (double s : {0.1, 0.5, 0.95})
      CHECK(g1(t, s) == g2(t, s));
}

TEST_CASE("structural properties on positive-omega configs") {
  for (const auto& cfg : {cfg_of(0, 1, 0.5, 0.05, 1.0, 2.5, 0.5, 0.3),
                          cfg_of(0, 1, 0.4, 0.0, 0.5, 2.2, 1.0, 0.0),
                          cfg_of(0, 1, 0.5, 0.02, 1.0, 3.0, 1.0, 0.4)}) {
    REQUIRE(validate_config(cfg).valid());
    const auto rep = green_property_check(cfg, 48);
    CHECK(rep.nonneg);
    CHECK(rep.monotone);
    CHECK(rep.bounds);
    CHECK(rep.power_ratio_ok);
    CHECK(rep.worst.value >= -1e-12);
  }
  CHECK_THROWS_AS(
      green_property_check(cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.0, 0.0), 8),
      config_error);
}

TEST_SUITE_END();
