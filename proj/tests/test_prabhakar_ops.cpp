#include <cmath>
#include <random>

#include <doctest.h>

#include "prabhakar/prabhakar_ops.hpp"

using namespace prabhakar;
using namespace prabhakar::ops;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double gamma_fn(double x) { return std::tgamma(x); }

}  // namespace

TEST_SUITE_BEGIN("prabhakar_ops");

TEST_CASE("PowerSum parsing and evaluation") {
  const auto one = PowerSum::parse("1");
  CHECK(one.eval(0.7, 0.0) == 1.0);

  const auto f = PowerSum::parse("2.5*(u-a)^0.5 + 1");
  CHECK(f.eval(4.0, 0.0) == doctest::Approx(2.5 * 2.0 + 1.0));

  const auto g = PowerSum::parse("(s-a)^2-3*(s-a)+2");
  CHECK(g.eval(2.0, 1.0) == doctest::Approx(1.0 - 3.0 + 2.0));

  const auto h = PowerSum::parse("-(t-a)");
  CHECK(h.eval(3.0, 1.0) == doctest::Approx(-2.0));

  const auto sci = PowerSum::parse("1e-2*(u-a)^1.5");
  CHECK(sci.eval(2.0, 1.0) == doctest::Approx(0.01));

  CHECK_THROWS_AS(PowerSum::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(PowerSum::parse("2*^"), std::invalid_argument);
  CHECK_THROWS_AS(PowerSum::parse("(u+a)"), std::invalid_argument);
  CHECK_THROWS_AS(PowerSum::parse("(u-a)^-1.5"), std::invalid_argument);
  CHECK_THROWS_AS(PowerSum::parse("bogus"), std::invalid_argument);
}

TEST_CASE("PrabhakarSpec validation") {
  CHECK_THROWS_AS((PrabhakarSpec{1, 2.0, 0, 0, 0}.validate()),
                  std::domain_error);
  CHECK_THROWS_AS((PrabhakarSpec{1, 3.5, 0, 0, 0}.validate()),
                  std::domain_error);
  CHECK_THROWS_AS((PrabhakarSpec{0, 2.5, 0, 0, 0}.validate()),
                  std::domain_error);
  CHECK_NOTHROW((PrabhakarSpec{1, 3.0, 0, 0, 0}.validate()));
}

TEST_CASE("kernel values") {
  const PrabhakarSpec s1{1.0, 2.5, 1.0, 0.0, 0.0};
  CHECK(rel_err(prabhakar_kernel(1.7, 0.7, s1, s1.mu),
                1.0 / gamma_fn(2.5)) < 1e-13);

  const PrabhakarSpec s2{1.0, 2.5, 1.0, 1.0, 0.0};
  CHECK(rel_err(prabhakar_kernel(2.0, 1.0, s2, 1.0), std::exp(1.0)) < 1e-13);

  // 50-digit series reference
  const PrabhakarSpec s3{0.5, 2.5, 0.7, 0.3, 0.0};
  CHECK(rel_err(prabhakar_kernel(1.5, 1.0, s3, 2.5),
                0.29539492055973426045) < 1e-13);

  CHECK_THROWS_AS(prabhakar_kernel(1.0, 1.0, s1, s1.mu), std::domain_error);
  CHECK_THROWS_AS(prabhakar_kernel(0.5, 1.0, s1, s1.mu), std::domain_error);
}

TEST_CASE("power_law_oracle closed forms") {
  const PrabhakarSpec spec{1.3, 2.5, 0.8, 0.0, 0.5};
  const double x = 1.7;
  // omega = 0: reduces to the Riemann-Liouville power image
  CHECK(rel_err(power_law_oracle(1.0, x, spec, spec.mu),
                std::pow(x - 0.5, 2.5) / gamma_fn(3.5)) < 1e-13);

  const PrabhakarSpec spec0{1.3, 2.5, 0.0, 0.4, 0.5};
  CHECK(rel_err(power_law_oracle(2.0, x, spec0, spec0.mu),
                gamma_fn(2.0) * std::pow(x - 0.5, 3.5) / gamma_fn(4.5)) <
        1e-13);

  // Gamma(1.5) * E^1_{1,4}(0.2), 50-digit reference
  const PrabhakarSpec spec1{1.0, 2.5, 1.0, 0.2, 0.0};
  CHECK(rel_err(power_law_oracle(1.5, 1.0, spec1, 2.5),
                0.15539525643013492398) < 1e-13);
  // cross-check the quadrature path against the same value
  const auto quadr = prabhakar_integral(
      [](double u) { return std::sqrt(u); }, 1.0, spec1, 2.5);
  CHECK(rel_err(quadr.value, 0.15539525643013492398) < 1e-9);
}

TEST_CASE("integral operator basics") {
  const PrabhakarSpec spec{1.0, 2.7, 0.0, 0.3, 0.0};
  // constant integrand at gamma = 0
  const auto r = prabhakar_integral([](double) { return 1.0; }, 0.8, spec,
                                    spec.mu);
  CHECK(rel_err(r.value, std::pow(0.8, 2.7) / gamma_fn(3.7)) < 1e-9);
  // zero integrand
  const auto z = prabhakar_integral([](double) { return 0.0; }, 0.8, spec,
                                    spec.mu);
  CHECK(z.value == 0.0);
}

TEST_CASE("integral operator is linear") {
  const PrabhakarSpec spec{0.8, 2.4, 0.6, 0.2, 0.0};
  auto f = [](double u) { return 1.0 + u * u; };
  auto g = [](double u) { return std::cos(3.0 * u); };
  const double x = 0.9;
  const double lhs = prabhakar_integral(
                         [&](double u) { return 2.0 * f(u) - 0.5 * g(u); }, x,
                         spec, spec.mu)
                         .value;
  const double rhs =
      2.0 * prabhakar_integral(f, x, spec, spec.mu).value -
      0.5 * prabhakar_integral(g, x, spec, spec.mu).value;
  CHECK(rel_err(lhs, rhs) < 1e-12);
}

TEST_CASE("gamma = 0 reduces to the Riemann-Liouville integral") {
  std::mt19937 rng(424242u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double c0 = u01(rng), c1 = u01(rng), c2 = u01(rng);
    auto f = [=](double u) { return c0 + c1 * u + c2 * u * u; };
    const double mu_eff = 2.1 + 0.9 * u01(rng);
    const double x = 0.3 + u01(rng);
    const PrabhakarSpec spec{0.5 + u01(rng), 2.5, 0.0, -0.5 + u01(rng), 0.0};
    const double via_prabhakar =
        prabhakar_integral(f, x, spec, mu_eff).value;
    const double via_rl = rl_integral(f, x, mu_eff, 0.0).value;
    CHECK(rel_err(via_prabhakar, via_rl) < 1e-10);
  }
}

TEST_CASE("rl_integral closed forms") {
  CHECK(rel_err(rl_integral([](double) { return 1.0; }, 1.3, 2.5, 0.0).value,
                std::pow(1.3, 2.5) / gamma_fn(3.5)) < 1e-10);
  CHECK(rel_err(
            rl_integral([](double t) { return t - 0.2; }, 1.0, 2.5, 0.2).value,
            std::pow(0.8, 3.5) / gamma_fn(4.5)) < 1e-10);
  CHECK(rel_err(rl_integral([](double t) { return std::cos(t); }, M_PI / 2,
                            1.0, 0.0)
                    .value,
                1.0) < 1e-10);
}

TEST_CASE("oracle agreement on a parameter slice") {
  for (double rho : {0.5, 1.5})
    for (double gamma : {0.0, 1.0})
      for (double omega : {-0.5, 0.5})
        for (double nu : {1.0, 1.5}) {
          const PrabhakarSpec spec{rho, 2.5, gamma, omega, 0.0};
          const double oracle = power_law_oracle(nu, 1.0, spec, 2.5);
          const auto got = prabhakar_integral(
              [nu](double u) { return std::pow(u, nu - 1.0); }, 1.0, spec,
              2.5);
          CHECK(rel_err(got.value, oracle) < 1e-8);
        }
}

TEST_CASE("inner singular operator") {
  const PrabhakarSpec spec{1.0, 2.5, 0.0, 0.4, 0.0};
  // gamma = 0, f = 1: RL integral of order 3 - mu
  const auto r = inner_prabhakar_integral_singular(
      [](double) { return 1.0; }, 0.9, spec);
  CHECK(rel_err(r.value, std::pow(0.9, 0.5) / gamma_fn(1.5)) < 1e-8);

  // power-law f: same termwise oracle with order 3 - mu and negated gamma
  const PrabhakarSpec spec2{0.7, 2.2, 0.6, 0.3, 0.0};
  PrabhakarSpec neg = spec2;
  neg.gamma = -spec2.gamma;
  const auto r2 = inner_prabhakar_integral_singular(
      [](double u) { return std::sqrt(u); }, 0.8, spec2);
  CHECK(rel_err(r2.value, power_law_oracle(1.5, 0.8, neg, 3.0 - spec2.mu)) <
        1e-8);

  const auto rz = inner_prabhakar_integral_singular(
      [](double) { return 0.0; }, 0.9, spec);
  CHECK(rz.value == 0.0);

  const PrabhakarSpec spec3{1.0, 3.0, 0.5, 0.1, 0.0};
  CHECK_THROWS_AS(inner_prabhakar_integral_singular(
                      [](double) { return 1.0; }, 0.9, spec3),
                  std::domain_error);
}

TEST_CASE("derivative of powers matches the RL formula at gamma = 0") {
  // D^mu (u-a)^{nu-1} = Gamma(nu)/Gamma(nu-mu) (x-a)^{nu-mu-1}
  const PrabhakarSpec spec{1.0, 2.5, 0.0, 0.0, 0.0};
  const auto d1 = prabhakar_derivative(
      [](double u) { return std::pow(u, 3.5); }, 0.8, spec);
  CHECK(rel_err(d1.value, 9.3053827172539591433) < 1e-5);

  const auto d2 = prabhakar_derivative(
      [](double u) { return u * u; }, 0.6, spec);
  CHECK(rel_err(d2.value, 1.4567312407894387607) < 1e-5);

  // fast path agrees with the quadrature path
  const auto fast = prabhakar_derivative(PowerSum::parse("(u-a)^3.5"), 0.8,
                                         spec);
  CHECK(rel_err(fast.value, 9.3053827172539591433) < 1e-6);
}

TEST_CASE("null space of the derivative operator") {
  const PrabhakarSpec spec{1.0, 2.5, 0.5, 0.3, 0.0};
  for (int j = 1; j <= 3; ++j) {
    const auto kj = kernel_basis_function(spec, j);
    const auto d = prabhakar_derivative(kj, 0.5, spec);
    CHECK(std::abs(d.value) < 1e-4);
  }
}

TEST_CASE("derivative inverts the integral on polynomials") {
  const PrabhakarSpec spec{1.0, 2.5, 0.5, 0.3, 0.0};
  const auto f = PowerSum::parse("1+(u-a)^2");
  // closed-form integral image, then the quadrature+differencing derivative
  auto integral_fn = [&](double t) {
    return prabhakar_integral(f, t, spec, spec.mu);
  };
  for (double x : {0.3, 0.6, 0.85}) {
    const auto d = prabhakar_derivative(integral_fn, x, spec);
    CHECK(rel_err(d.value, f.eval(x, 0.0)) < 1e-5);
  }
}

TEST_CASE("mu = 3 routes to the classical third derivative") {
  const PrabhakarSpec spec{1.0, 3.0, 0.5, 0.3, 0.0};
  const auto d = prabhakar_derivative(
      [](double u) { return std::sin(2.0 * u); }, 0.7, spec);
  CHECK(rel_err(d.value, -8.0 * std::cos(1.4)) < 1e-7);
  // analytic fast path for power sums
  const auto p = prabhakar_derivative(PowerSum::parse("(u-a)^4"), 0.5, spec);
  CHECK(rel_err(p.value, 24.0 * 0.5) < 1e-14);
}

TEST_SUITE_END();
