#include "prabhakar/greens_function.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace prabhakar::greens {

namespace {

constexpr double kSlack = 1e-12;

}  // namespace

ConfigCheck validate_config(const BVPConfig& cfg) {
  cfg.spec.validate();
  if (cfg.spec.a != cfg.a)
    throw config_error("BVPConfig: spec.a must equal a");
  ConfigCheck out;
  out.ordering = cfg.a < cfg.xi && cfg.xi < cfg.b;
  out.beta_nonneg = cfg.beta >= 0.0;
  const double mu = cfg.spec.mu;
  if (out.ordering) {
    out.power_condition =
        cfg.beta * std::pow(cfg.xi - cfg.a, mu - 1.0) <
        (mu - 1.0) * std::pow(cfg.b - cfg.a, mu - 2.0) && out.beta_nonneg;
    const double rho = cfg.spec.rho, gm = cfg.spec.gamma, om = cfg.spec.omega;
    const double dba = cfg.b - cfg.a, dxa = cfg.xi - cfg.a;
    const double e_mum1 =
        sf::ml3({rho, mu - 1.0, gm, om * std::pow(dba, rho)}).value;
    const double e_mu = sf::ml3({rho, mu, gm, om * std::pow(dxa, rho)}).value;
    out.denom = std::pow(dba, mu - 2.0) * e_mum1 -
                cfg.beta * std::pow(dxa, mu - 1.0) * e_mu;
    out.denom_positive = out.denom > 0.0;
  }
  return out;
}

GreenFn::GreenFn(const BVPConfig& cfg)
    : cfg_(cfg),
      ml_mu_(cfg.spec.rho, cfg.spec.mu, cfg.spec.gamma),
      ml_mum1_(cfg.spec.rho, cfg.spec.mu - 1.0, cfg.spec.gamma) {
  const auto check = validate_config(cfg);
  if (!check.valid())
    throw config_error("GreenFn: config failed validation");
  ml_mu_.build_table();
  ml_mum1_.build_table();
  dbar_ = B(cfg_.a);
  denom_ = dbar_ - cfg_.beta * A(cfg_.xi);
}

double GreenFn::A(double t) const {
  const double d = t - cfg_.a;
  if (d <= 0.0) return 0.0;  // mu-1 > 1
  return std::pow(d, cfg_.spec.mu - 1.0) *
         ml_mu_(cfg_.spec.omega * std::pow(d, cfg_.spec.rho));
}

double GreenFn::B(double s) const {
  const double d = cfg_.b - s;
  if (d <= 0.0) return 0.0;  // exponent mu-2 > 0
  return std::pow(d, cfg_.spec.mu - 2.0) *
         ml_mum1_(cfg_.spec.omega * std::pow(d, cfg_.spec.rho));
}

double GreenFn::E_mu(double d) const {
  return ml_mu_(cfg_.spec.omega * std::pow(std::max(d, 0.0), cfg_.spec.rho));
}

double GreenFn::E_mum1(double d) const {
  return ml_mum1_(cfg_.spec.omega * std::pow(std::max(d, 0.0), cfg_.spec.rho));
}

double GreenFn::P(double d) const {
  if (d <= 0.0) return 0.0;
  return std::pow(d, cfg_.spec.mu - 1.0) *
         ml_mu_(cfg_.spec.omega * std::pow(d, cfg_.spec.rho));
}

double GreenFn::operator()(double t, double s) const {
  double v = A(t) * B(s) / dbar_;
  if (s < t) v -= P(t - s);
  return v;
}

double GreenFn::at_b(double d) const {
  if (d <= 0.0) return 0.0;
  const double mu = cfg_.spec.mu;
  const double z = cfg_.spec.omega * std::pow(d, cfg_.spec.rho);
  return A(cfg_.b) * std::pow(d, mu - 2.0) * ml_mum1_(z) / dbar_ -
         std::pow(d, mu - 1.0) * ml_mu_(z);
}

double GreenFn::lambda_factor(double t) const {
  return cfg_.beta * A(t) / denom_;
}

GreenEval green_eval(double t, double s, const BVPConfig& cfg) {
  if (!(t >= cfg.a && t <= cfg.b && s >= cfg.a && s <= cfg.b))
    throw config_error("green_eval: (t,s) outside [a,b]^2");
  const GreenFn g(cfg);
  return {t, s, g(t, s), s <= t ? Branch::s_le_t : Branch::t_le_s};
}

AmplificationFactors amplification_factors(const BVPConfig& cfg) {
  const GreenFn g(cfg);
  return {g.lambda_factor(cfg.b), g.lambda_factor(cfg.xi)};
}

std::vector<double> chebyshev_nodes(double a, double b, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i)
    t[i] = a + (b - a) * 0.5 * (1.0 - std::cos(M_PI * i / (n - 1)));
  t.front() = a;
  t.back() = b;
  return t;
}

std::vector<double> green_grid_values(const GreenFn& g,
                                      const std::vector<double>& ts,
                                      const std::vector<double>& ss,
                                      Exec exec) {
  const int nt = static_cast<int>(ts.size());
  const int ns = static_cast<int>(ss.size());
  std::vector<double> vals(static_cast<std::size_t>(nt) * ns);
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < ns; ++j)
        vals[static_cast<std::size_t>(i) * ns + j] = g(ts[i], ss[j]);
  } else {
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < ns; ++j)
        vals[static_cast<std::size_t>(i) * ns + j] = g(ts[i], ss[j]);
  }
  return vals;
}

PropertyReport green_property_check(const BVPConfig& cfg, int n_grid,
                                    Exec exec) {
  if (n_grid < 16)
    throw config_error("green_property_check: n_grid must be >= 16");
  const GreenFn g(cfg);
  const auto nodes = chebyshev_nodes(cfg.a, cfg.b, n_grid);
  const auto vals = green_grid_values(g, nodes, nodes, exec);
  auto at = [&](int i, int j) {
    return vals[static_cast<std::size_t>(i) * n_grid + j];
  };

  PropertyReport rep;
  rep.n_grid = n_grid;
  rep.nonneg = rep.monotone = rep.bounds = rep.power_ratio_ok =
      rep.ml_ratio_ok = true;
  double worst = 0.0;

  auto record = [&](bool& flag, double margin, double t, double s) {
    if (margin < -kSlack) flag = false;
    if (margin < worst) {
      worst = margin;
      rep.worst = {t, s, margin};
    }
  };

  const double mu = cfg.spec.mu;
  const double ba = cfg.b - cfg.a;
  double ml_worst = 0.0;

  for (int j = 0; j < n_grid; ++j) {
    const double s = nodes[j];
    for (int i = 0; i < n_grid; ++i) {
      const double t = nodes[i];
      const double v = at(i, j);
      record(rep.nonneg, v, t, s);
      if (i + 1 < n_grid) record(rep.monotone, at(i + 1, j) - v, t, s);
      record(rep.bounds, v - at(0, j), t, s);
      record(rep.bounds, at(n_grid - 1, j) - v, t, s);

      if (s <= t) {
        // Proof sub-inequality (i): pure power ratio, no ML factors.
        const double pr = std::pow(t - cfg.a, mu - 1.0) *
                              std::pow(cfg.b - s, mu - 2.0) *
                              std::pow(ba, 1.0 - mu) -
                          std::pow(t - s, mu - 1.0);
        if (pr < -kSlack) rep.power_ratio_ok = false;
        // Sub-inequality (ii): the ML-factor ratio. We have no proof of
        // this one for general parameters, so violations are reported
        // rather than asserted.
        const double diff = g.E_mu(t - cfg.a) * g.E_mum1(cfg.b - s) /
                                g.E_mum1(ba) -
                            g.E_mu(t - s);
        if (diff < -kSlack && diff < ml_worst) {
          ml_worst = diff;
          rep.ml_ratio_worst = {t, s, diff};
          rep.ml_ratio_ok = false;
        }
      }
    }
  }
  return rep;
}

}  // namespace prabhakar::greens
