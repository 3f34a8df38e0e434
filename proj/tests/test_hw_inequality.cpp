#include <cmath>

#include <doctest.h>

#include "prabhakar/hw_inequality.hpp"

using namespace prabhakar;
using namespace prabhakar::hw;

namespace {

greens::BVPConfig cfg_of(double a, double b, double xi, double beta,
                         double rho, double mu, double gamma, double omega) {
  return {a, b, xi, beta, {rho, mu, gamma, omega, a}};
}

constexpr double kPi2 = 9.8696044010893586188;

}  // namespace

TEST_SUITE_BEGIN("hw");

TEST_CASE("lhs integral") {
  const auto cfg = cfg_of(0, 1, 0.5, 0.1, 1.0, 2.5, 0.0, 0.0);
  CHECK(lhs_integral(cfg, [](double) { return 0.0; }) == 0.0);
  // q = 1 at gamma = 0: (4/15)/Gamma(2.5), Beta-integral reference
  CHECK(std::abs(lhs_integral(cfg, [](double) { return 1.0; }) -
                 0.20060074081698001314) < 1e-9);
  // |q| is taken pointwise: a negative q gives the same integral
  CHECK(lhs_integral(cfg, [](double) { return -1.0; }) ==
        doctest::Approx(0.20060074081698001314).epsilon(1e-9));
}

TEST_CASE("rhs bounds") {
  const auto zero_beta = cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.5, 0.3);
  const auto r0 = rhs_bounds(zero_beta);
  CHECK(r0.stated == 1.0);
  CHECK(r0.proof == 1.0);

  // gamma = 0, omega = 0 closed form
  const double mu = 2.5, beta = 0.1, xi = 0.5;
  const auto cfg = cfg_of(0, 1, xi, beta, 1.0, mu, 0.0, 0.0);
  const auto r = rhs_bounds(cfg);
  const double expect =
      1.0 / (1.0 + beta / ((mu - 1.0) - beta * std::pow(xi, mu - 1.0)));
  CHECK(r.proof == doctest::Approx(expect).epsilon(1e-12));
  CHECK(r.proof <= r.stated);
  CHECK(r.stated <= 1.0);
  CHECK(r.proof > 0.0);
}

TEST_CASE("rhs_proof decreases strictly in beta") {
  double prev = 1.0 + 1e-9;
  for (double beta : {0.0, 0.05, 0.1, 0.2, 0.3}) {
    const auto cfg = cfg_of(0, 1, 0.5, beta, 1.0, 2.5, 0.5, 0.3);
    const double rp = rhs_bounds(cfg).proof;
    CHECK(rp < prev);
    prev = rp;
  }
}

TEST_CASE("manufactured instance certifies; under-scaled q fails") {
  const auto cfg = cfg_of(0, 1, 0.5, 0.0, 1.0, 2.5, 0.0, 0.0);
  auto q = [](double) { return 1.0; };
  const auto inst = run_manufactured(cfg, q, 200);
  CHECK(inst.report.holds_proof);
  CHECK(inst.report.margin_proof >= -1e-8);
  CHECK(inst.report.provenance == Provenance::spectral_scaled);
  // beta = 0 reduces the certificate to lhs >= 1
  CHECK(inst.report.rhs_proof == 1.0);
  CHECK(inst.report.lhs >= 1.0 - 1e-8);

  // halving q~ puts it below the necessary threshold
  const double lambda = inst.lambda_star;
  const auto weak = certify(
      cfg, [&](double s) { return 0.5 * q(s) / lambda; },
      Provenance::user_supplied);
  CHECK_FALSE(weak.holds_proof);
}

TEST_CASE("report invariants across a small sweep") {
  for (double rho : {0.5, 1.0})
    for (double omega : {0.0, 0.3})
      for (double beta : {0.0, 0.05}) {
        const auto cfg = cfg_of(0, 1, 0.5, beta, rho, 2.5, 0.5, omega);
        const auto rep = certify(
            cfg, [](double s) { return 1.0 + s; }, Provenance::user_supplied);
        CHECK(rep.rhs_proof > 0.0);
        CHECK(rep.rhs_proof <= rep.rhs_stated);
        CHECK(rep.rhs_stated <= 1.0);
        CHECK(rep.lhs >= 0.0);
      }
}

TEST_CASE("classical Lyapunov oracle") {
  const auto r1 =
      classical_lyapunov_check(0, 1, [](double) { return kPi2; });
  CHECK(r1.lhs == doctest::Approx(kPi2).epsilon(1e-12));
  CHECK(r1.rhs == doctest::Approx(4.0));
  CHECK(r1.holds);

  const auto r2 =
      classical_lyapunov_check(0, 2, [](double) { return kPi2 / 4.0; });
  CHECK(r2.lhs == doctest::Approx(kPi2 / 2.0).epsilon(1e-12));
  CHECK(r2.holds);

  const auto r3 = classical_lyapunov_check(0, 1, [](double) { return 0.0; });
  CHECK_FALSE(r3.holds);
}

TEST_CASE("classical Hartman-Wintner oracle") {
  const auto r =
      classical_hartman_wintner_check(0, 1, [](double) { return kPi2; });
  CHECK(r.lhs == doctest::Approx(kPi2 / 6.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.holds);
  CHECK(r.max_identity_err <= 1e-15);

  // q <= 0: the positive part is empty
  const auto rneg = classical_hartman_wintner_check(
      0, 1, [](double s) { return -1.0 - s; });
  CHECK(rneg.lhs == 0.0);
  CHECK_FALSE(rneg.holds);
}

TEST_SUITE_END();
