#include "prabhakar/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "prabhakar/bvp_spectral.hpp"
#include "prabhakar/greens_function.hpp"
#include "prabhakar/hw_inequality.hpp"
#include "prabhakar/json_writer.hpp"
#include "prabhakar/prabhakar_ops.hpp"
#include "prabhakar/quadrature.hpp"
#include "prabhakar/special_functions.hpp"

namespace prabhakar::reproduce {

namespace {

using greens::BVPConfig;
using ops::PowerSum;
using ops::PrabhakarSpec;

struct Worst {
  double value = 0.0;
  void track(double err) { value = std::max(value, err); }
};

std::string brief(const char* fmt, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

BVPConfig make_cfg(double a, double b, double xi, double beta, double rho,
                   double mu, double gamma, double omega) {
  return {a, b, xi, beta, {rho, mu, gamma, omega, a}};
}

// The manufactured-instance sweep grid.
std::vector<BVPConfig> sweep_configs() {
  std::vector<BVPConfig> out;
  for (double rho : {0.5, 1.0})
    for (double mu : {2.2, 2.5, 2.9})
      for (double gamma : {0.0, 0.5})
        for (double omega : {0.0, 0.3})
          for (double beta : {0.0, 0.05})
            out.push_back(make_cfg(0.0, 1.0, 0.5, beta, rho, mu, gamma, omega));
  return out;
}

double sweep_q(double s) { return 1.0 + s; }

CriterionResult c1_ml_reductions() {
  CriterionResult r{1, "ml_reductions", false, 0.0, 1e-12, ""};
  Worst w;
  sf::MLSeries exp_series(1.0, 1.0, 1.0);
  for (int i = 0; i <= 200; ++i) {
    const double z = -10.0 + 20.0 * i / 200.0;
    w.track(std::abs(exp_series(z) - std::exp(z)) / std::exp(z));
  }
  sf::MLSeries cosh_series(2.0, 1.0, 1.0);
  for (int i = 0; i <= 200; ++i) {
    const double x = 5.0 * i / 200.0;
    w.track(std::abs(cosh_series(x * x) - std::cosh(x)) / std::cosh(x));
  }
  bool gamma0_ok = true;
  double gamma0_worst = 0.0;
  std::mt19937 rng(20240814u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double rho = 0.3 + 2.7 * u01(rng);
    const double mu = 0.5 + 4.5 * u01(rng);
    const double z = -50.0 + 100.0 * u01(rng);
    const double expect = std::exp(-sf::log_gamma(mu));
    const double err =
        std::abs(sf::ml3({rho, mu, 0.0, z}).value - expect) / expect;
    gamma0_worst = std::max(gamma0_worst, err);
    if (err > 1e-14) gamma0_ok = false;
  }
  r.observed = w.value;
  r.pass = w.value <= r.threshold && gamma0_ok;
  r.detail = brief("gamma0 worst %.3g (tol 1e-14)", gamma0_worst);
  return r;
}

CriterionResult c2_oracle_agreement() {
  CriterionResult r{2, "integral_oracle_agreement", false, 0.0, 1e-8, ""};
  Worst w;
  const double x = 1.0;
  for (double rho : {0.5, 1.0, 1.5})
    for (double mu : {2.2, 2.5, 2.9})
      for (double gamma : {0.0, 0.5, 1.0})
        for (double omega : {-0.5, 0.0, 0.5})
          for (double nu : {1.0, 1.5, 2.0}) {
            const PrabhakarSpec spec{rho, mu, gamma, omega, 0.0};
            const double oracle = ops::power_law_oracle(nu, x, spec, mu);
            const auto got = ops::prabhakar_integral(
                [nu](double u) { return std::pow(u, nu - 1.0); }, x, spec, mu);
            w.track(std::abs(got.value - oracle) / std::abs(oracle));
          }
  r.observed = w.value;
  r.pass = w.value <= r.threshold;
  r.detail = "243 parameter combinations";
  return r;
}

CriterionResult c3_roundtrip() {
  CriterionResult r{3, "roundtrip_identity", false, 0.0, 1e-5, ""};
  const PrabhakarSpec spec{1.0, 2.5, 0.5, 0.3, 0.0};
  const std::vector<PowerSum> polys = {
      PowerSum::parse("2"),
      PowerSum::parse("1+(u-a)"),
      PowerSum::parse("3-(u-a)"),
      PowerSum::parse("1+(u-a)^2"),
      PowerSum::parse("2+(u-a)-(u-a)^3"),
  };
  Worst w;
  for (const auto& f : polys) {
    // E f in closed form per power term; D then acts on that composite.
    std::vector<sf::MLSeries> series;
    for (const auto& t : f.terms()) {
      series.emplace_back(spec.rho, spec.mu + t.power + 1.0, spec.gamma);
      series.back().build_table();
    }
    auto integral_fn = [&](double t) {
      double v = 0.0;
      const double d = t - spec.a;
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        const auto& term = f.terms()[i];
        const double nu = term.power + 1.0;
        v += term.coeff * std::exp(sf::log_gamma(nu)) *
             std::pow(d, spec.mu + nu - 1.0) *
             series[i](spec.omega * std::pow(d, spec.rho));
      }
      return v;
    };
    for (int i = 0; i < 10; ++i) {
      const double x = 0.15 + 0.75 * i / 9.0;
      const double got = ops::prabhakar_derivative(integral_fn, x, spec).value;
      const double expect = f.eval(x, spec.a);
      w.track(std::abs(got - expect) / std::abs(expect));
    }
  }
  r.observed = w.value;
  r.pass = w.value <= r.threshold;
  r.detail = "5 polynomials x 10 interior points";
  return r;
}

CriterionResult c4_null_space() {
  CriterionResult r{4, "null_space", false, 0.0, 1e-4, ""};
  Worst w;
  const std::vector<PrabhakarSpec> specs = {
      {1.0, 2.5, 0.5, 0.3, 0.0},
      {0.5, 2.2, 1.0, 0.0, 0.0},
  };
  for (const auto& spec : specs)
    for (int j = 1; j <= 3; ++j) {
      const auto kj = ops::kernel_basis_function(spec, j);
      for (double x : {0.25, 0.5, 0.75})
        w.track(std::abs(ops::prabhakar_derivative(kj, x, spec).value));
    }
  r.observed = w.value;
  r.pass = w.value <= r.threshold;
  r.detail = "3 kernels x 2 parameter sets x 3 points";
  return r;
}

CriterionResult c5_green_gamma0() {
  CriterionResult r{5, "green_gamma0_reduction", false, 0.0, 1e-10, ""};
  const auto cfg = make_cfg(0.0, 1.0, 0.5, 0.1, 1.0, 2.5, 0.0, 0.7);
  const greens::GreenFn g(cfg);
  const double gm = std::exp(sf::log_gamma(cfg.spec.mu));
  const auto s_nodes = greens::chebyshev_nodes(cfg.a, cfg.b, 200);
  double scale = 0.0;
  for (double s : s_nodes)
    scale = std::max(scale, std::pow(cfg.b - s, cfg.spec.mu - 2.0) * (s - cfg.a));
  Worst w;
  for (double s : s_nodes) {
    const double closed = std::pow(cfg.b - s, cfg.spec.mu - 2.0) * (s - cfg.a);
    w.track(std::abs(gm * g(cfg.b, s) - closed) / scale);
  }
  r.observed = w.value;
  r.pass = w.value <= r.threshold;
  r.detail = "200 Chebyshev s-nodes, scaled by max of the closed form";
  return r;
}

CriterionResult c6_green_properties() {
  CriterionResult r{6, "green_properties", false, 0.0, 1e-12, ""};
  const std::vector<BVPConfig> cfgs = {
      make_cfg(0.0, 1.0, 0.5, 0.05, 1.0, 2.5, 0.5, 0.3),
      make_cfg(0.0, 1.0, 0.5, 0.0, 0.5, 2.2, 1.0, 0.0),
      make_cfg(0.0, 1.0, 0.3, 0.1, 1.5, 2.9, 0.0, 0.5),
      make_cfg(0.0, 1.0, 0.6, 0.02, 1.0, 3.0, 1.0, 0.4),
      make_cfg(0.0, 1.0, 0.5, 0.05, 0.5, 2.5, 0.7, 0.0),
      make_cfg(0.0, 1.0, 0.4, 0.0, 2.0, 2.7, 0.3, 1.0),
      make_cfg(0.0, 1.0, 0.5, 0.08, 1.0, 2.2, 0.0, 0.2),
      make_cfg(0.0, 1.0, 0.7, 0.01, 0.7, 2.8, 1.2, 0.6),
  };
  double worst = 0.0;
  bool all_ok = true;
  int ml_ratio_failures = 0;
  for (const auto& cfg : cfgs) {
    if (!greens::validate_config(cfg).valid()) {
      all_ok = false;
      continue;
    }
    const auto rep = greens::green_property_check(cfg, 200);
    all_ok = all_ok && rep.nonneg && rep.monotone && rep.bounds &&
             rep.power_ratio_ok;
    worst = std::min(worst, rep.worst.value);
    if (!rep.ml_ratio_ok) ++ml_ratio_failures;
  }
  r.observed = -worst;
  r.pass = all_ok && r.observed <= r.threshold;
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "8 configs, 200x200 grid; ml-ratio failures (reported): %d",
                ml_ratio_failures);
  r.detail = buf;
  return r;
}

struct SweepOutcome {
  double worst_margin = HUGE_VAL;   // min margin_proof
  double worst_xa = 0.0;
  double worst_xpa = 0.0;
  double worst_bcb = 0.0;
  double worst_mesh_drift = 0.0;    // relative lambda(400) vs lambda(200)
  bool all_hold = true;
};

SweepOutcome run_sweep() {
  const auto cfgs = sweep_configs();
  std::vector<SweepOutcome> per(cfgs.size());
  const int n = static_cast<int>(cfgs.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const auto inst = hw::run_manufactured(cfgs[i], sweep_q, 200);
    SweepOutcome& o = per[i];
    o.worst_margin = inst.report.margin_proof;
    o.all_hold = inst.report.holds_proof;
    o.worst_xa = inst.residuals.x_a;
    o.worst_xpa = inst.residuals.xprime_a;
    o.worst_bcb = inst.residuals.bc_b;
    const double l400 = spectral::lambda_at(cfgs[i], sweep_q, 400);
    o.worst_mesh_drift =
        std::abs(l400 - inst.lambda_star) / std::abs(l400);
  }
  SweepOutcome total;
  for (const auto& o : per) {
    total.worst_margin = std::min(total.worst_margin, o.worst_margin);
    total.worst_xa = std::max(total.worst_xa, o.worst_xa);
    total.worst_xpa = std::max(total.worst_xpa, o.worst_xpa);
    total.worst_bcb = std::max(total.worst_bcb, o.worst_bcb);
    total.worst_mesh_drift = std::max(total.worst_mesh_drift, o.worst_mesh_drift);
    total.all_hold = total.all_hold && o.all_hold;
  }
  return total;
}

CriterionResult c7_manufactured(const SweepOutcome& sweep) {
  CriterionResult r{7, "manufactured_certification", false, 0.0, 1e-8, ""};
  r.observed = -std::min(sweep.worst_margin, 0.0);
  const bool residuals_ok = sweep.worst_xa <= 1e-4 && sweep.worst_xpa <= 1e-4 &&
                            sweep.worst_bcb <= 1e-3;
  r.pass = sweep.all_hold && r.observed <= r.threshold && residuals_ok;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "48 configs; min margin %.6g; |x(a)| %.2g, |x'(a)| %.2g "
                "(tol 1e-4), bc(b) %.2g (tol 1e-3)",
                sweep.worst_margin, sweep.worst_xa, sweep.worst_xpa,
                sweep.worst_bcb);
  r.detail = buf;
  return r;
}

CriterionResult c8_cabrera() {
  CriterionResult r{8, "cabrera_special_case", false, 0.0, 1e-9, ""};
  std::mt19937 rng(77001u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Worst w;
  for (int i = 0; i < 10; ++i) {
    const double a = -1.0 + 2.0 * u01(rng);
    const double b = a + 0.5 + 1.5 * u01(rng);
    const double xi = a + (0.2 + 0.6 * u01(rng)) * (b - a);
    const double mu = 2.1 + 0.85 * u01(rng);
    const double beta_max = (mu - 1.0) * std::pow(b - a, mu - 2.0) /
                            std::pow(xi - a, mu - 1.0);
    const double beta = 0.5 * beta_max * u01(rng);
    const auto cfg = make_cfg(a, b, xi, beta, 1.0, mu, 0.0, 0.0);
    const double c0 = 0.5 + u01(rng), c1 = u01(rng);
    auto q = [=](double s) { return c0 + c1 * (s - a); };

    const double gm = std::exp(sf::log_gamma(mu));
    const double lhs_scaled = gm * hw::lhs_integral(cfg, q);
    const double lhs_direct =
        quad::integrate_endpoint_singular(
            [&](double sigma) {
              const double s = b - sigma;
              return std::pow(b - s, mu - 2.0) * (s - a) * std::abs(q(s));
            },
            b - a)
            .value;
    w.track(std::abs(lhs_scaled - lhs_direct) /
            std::max(std::abs(lhs_direct), 1e-300));

    const double rhs_direct =
        gm / (1.0 + beta * std::pow(b - a, mu - 1.0) /
                        ((mu - 1.0) * std::pow(b - a, mu - 2.0) -
                         beta * std::pow(xi - a, mu - 1.0)));
    const double rhs_scaled = gm * hw::rhs_bounds(cfg).proof;
    w.track(std::abs(rhs_scaled - rhs_direct) / std::abs(rhs_direct));
  }
  r.observed = w.value;
  r.pass = w.value <= r.threshold;
  r.detail = "10 random configs, both sides Gamma(mu)-scaled";
  return r;
}

CriterionResult c9_classical() {
  CriterionResult r{9, "classical_oracles", false, 0.0, 1e-12, ""};
  const double pi2 = 9.8696044010893586188;
  auto lyap = hw::classical_lyapunov_check(0.0, 1.0, [&](double) { return pi2; });
  auto lyap2 = hw::classical_lyapunov_check(
      0.0, 2.0, [&](double) { return pi2 / 4.0; });
  auto hwrep = hw::classical_hartman_wintner_check(
      0.0, 1.0, [&](double) { return pi2; });
  Worst w;
  w.track(std::abs(lyap.lhs - pi2));
  w.track(std::abs(lyap2.lhs - pi2 / 2.0));
  w.track(std::abs(hwrep.lhs - pi2 / 6.0));
  const bool identity_ok = hwrep.max_identity_err <= 1e-15;
  r.observed = w.value;
  r.pass = lyap.holds && lyap2.holds && hwrep.holds && identity_ok &&
           w.value <= r.threshold;
  r.detail = brief("midpoint max-identity err %.3g (tol 1e-15)",
                   hwrep.max_identity_err);
  return r;
}

CriterionResult c10_mesh_convergence(const SweepOutcome& sweep) {
  CriterionResult r{10, "mesh_convergence", false, 0.0, 1e-6, ""};
  r.observed = sweep.worst_mesh_drift;
  r.pass = r.observed <= r.threshold;
  r.detail = "lambda* drift between n=200 and n=400 over the 48-config sweep";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_criteria() {
  std::vector<CriterionResult> out;
  out.push_back(c1_ml_reductions());
  out.push_back(c2_oracle_agreement());
  out.push_back(c3_roundtrip());
  out.push_back(c4_null_space());
  out.push_back(c5_green_gamma0());
  out.push_back(c6_green_properties());
  const auto sweep = run_sweep();
  out.push_back(c7_manufactured(sweep));
  out.push_back(c8_cabrera());
  out.push_back(c9_classical());
  out.push_back(c10_mesh_convergence(sweep));
  return out;
}

CriterionResult determinism_criterion(
    const std::vector<CriterionResult>& first) {
  const std::string j1 = summary_json(first);
  const std::string j2 = summary_json(run_criteria());
  CriterionResult r{11, "determinism", j1 == j2, j1 == j2 ? 0.0 : 1.0, 0.0,
                    "summary JSON byte comparison across two full runs"};
  return r;
}

std::vector<CriterionResult> run_all() {
  auto results = run_criteria();
  results.push_back(determinism_criterion(results));
  return results;
}

std::string summary_json(const std::vector<CriterionResult>& results) {
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("report").value("reproduce-summary");
  int passed = 0;
  for (const auto& r : results)
    if (r.pass) ++passed;
  w.key("criteria").begin_array();
  for (const auto& r : results) {
    w.begin_object();
    w.key("id").value(r.id);
    w.key("name").value(r.name);
    w.key("pass").value(r.pass);
    w.key("observed").value(r.observed);
    w.key("threshold").value(r.threshold);
    w.key("detail").value(r.detail);
    w.end_object();
  }
  w.end_array();
  w.key("passed").value(passed);
  w.key("failed").value(static_cast<int>(results.size()) - passed);
  w.key("all_pass").value(passed == static_cast<int>(results.size()));
  w.end_object();
  return w.str();
}

}  // namespace prabhakar::reproduce
