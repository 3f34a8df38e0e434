#include <cmath>
#include <random>

#include <doctest.h>

#include "prabhakar/special_functions.hpp"

using namespace prabhakar;
using namespace prabhakar::sf;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_SUITE_BEGIN("special_functions");

TEST_CASE("log_gamma at known points") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rel_err(log_gamma(5.0), std::log(24.0)) < 1e-13);
  // ln(sqrt(pi)), 50-digit reference
  CHECK(rel_err(log_gamma(0.5), 0.57236494292470008707) < 1e-13);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(0.0, 0) == 1.0);
  CHECK(pochhammer(17.3, 0) == 1.0);
  CHECK(pochhammer(3.0, 4) == 360.0);
  CHECK(pochhammer(0.0, 2) == 0.0);
  CHECK(pochhammer(-2.5, 3) == doctest::Approx(-1.875).epsilon(1e-15));
  // negative integer gamma truncates the product through zero
  CHECK(pochhammer(-2.0, 4) == 0.0);
  CHECK(std::isinf(pochhammer(200.0, 200)));
  CHECK_THROWS_AS(pochhammer(1.0, -1), std::domain_error);
}

TEST_CASE("ml3 classical reductions") {
  CHECK(rel_err(ml3({1, 1, 1, 1}).value, std::exp(1.0)) < 1e-13);
  // gamma = 0 collapses every z to 1/Gamma(mu)
  CHECK(rel_err(ml3({2, 3, 0, 7.3}).value, 0.5) < 1e-14);
  // 50-digit series references
  CHECK(rel_err(ml3({2, 1, 1, 1}).value, 1.5430806348152437785) < 1e-13);
  CHECK(rel_err(ml3({0.5, 1, 1, 1}).value, 5.0089800807622834663) < 1e-13);
}

TEST_CASE("ml2 and ml1 delegate correctly") {
  CHECK(rel_err(ml2(1, 2, 1).value, 1.7182818284590452354) < 1e-13);
  CHECK(ml2(1, 1, 0).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rel_err(ml2(2, 2, 1).value, 1.1752011936438014569) < 1e-13);
  CHECK(rel_err(ml1(1, -2).value, 0.13533528323661269189) < 1e-13);
  CHECK(rel_err(ml1(2, 1).value, 1.5430806348152437785) < 1e-13);
  CHECK(ml1(0.5, 0).value == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("domain rejection") {
  CHECK_THROWS_AS(ml3({-1, 1, 1, 1}), std::domain_error);
  CHECK_THROWS_AS(ml3({1, 0, 1, 1}), std::domain_error);
  CHECK_THROWS_AS(ml3({1, -0.5, 1, 1}), std::domain_error);
  CHECK_THROWS_AS(ml3({1, 1, 1, 51.0}), std::domain_error);
  CHECK_THROWS_AS(ml3({1, 1, 1, -51.0}), std::domain_error);
}

TEST_CASE("max_terms exhaustion reports the failure") {
  CHECK_THROWS_AS(ml3({1, 1, 1, 40.0}, 1e-14, 5), accuracy_error);
}

TEST_CASE("exp and cosh agreement on a range") {
  MLSeries exp_series(1, 1, 1);
  for (int i = 0; i <= 40; ++i) {
    const double z = -10.0 + 0.5 * i;
    CHECK(rel_err(exp_series(z), std::exp(z)) < 1e-12);
  }
  MLSeries cosh_series(2, 1, 1);
  for (int i = 0; i <= 40; ++i) {
    const double x = 0.125 * i;
    CHECK(rel_err(cosh_series(x * x), std::cosh(x)) < 1e-12);
  }
}

TEST_CASE("gamma = 0 gives 1/Gamma(mu) for random parameters") {
  std::mt19937 rng(12345u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double rho = 0.3 + 2.7 * u01(rng);
    const double mu = 0.5 + 4.5 * u01(rng);
    const double z = -50.0 + 100.0 * u01(rng);
    const double expect = std::exp(-log_gamma(mu));
    CHECK(rel_err(ml3({rho, mu, 0.0, z}).value, expect) < 1e-14);
  }
}

TEST_CASE("recurrence and direct term evaluation agree") {
  for (double z : {3.0, -3.0, 0.7}) {
    const MLParams p{0.7, 2.5, 0.5, z};
    double direct_sum = 0.0;
    for (int k = 0; k < 80; ++k) direct_sum += ml3_term(p, k);
    CHECK(rel_err(ml3(p).value, direct_sum) < 1e-13);
  }
  // negative gamma too (used by the derivative operator)
  const MLParams p{1.0, 0.5, -0.5, 0.3};
  double direct_sum = 0.0;
  for (int k = 0; k < 80; ++k) direct_sum += ml3_term(p, k);
  CHECK(rel_err(ml3(p).value, direct_sum) < 1e-13);
  CHECK(rel_err(ml3(p).value, 0.38593356880332283315) < 1e-13);
}

TEST_CASE("nonnegative terms imply a 1/Gamma(mu) lower bound") {
  for (double rho : {0.5, 1.0, 2.0})
    for (double mu : {0.8, 2.5})
      for (double gamma : {0.0, 0.5, 2.0})
        for (double z : {0.0, 0.3, 5.0}) {
          for (int k = 0; k < 40; ++k)
            CHECK(ml3_term({rho, mu, gamma, z}, k) >= 0.0);
          CHECK(ml3({rho, mu, gamma, z}).value >=
                std::exp(-log_gamma(mu)) * (1.0 - 1e-14));
        }
}

TEST_CASE("error estimate covers the truth") {
  const auto r = ml3({0.5, 2.5, 0.7, 0.3 * std::sqrt(0.5)});
  CHECK(std::abs(r.value - 0.83550300582339840909) <= r.abs_err + 1e-15);
  CHECK(r.abs_err < 1e-12);
  CHECK(r.terms > 3);
}

TEST_SUITE_END();
