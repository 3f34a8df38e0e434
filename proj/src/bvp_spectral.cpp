#include "prabhakar/bvp_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "prabhakar/quadrature.hpp"

namespace prabhakar::spectral {

namespace {

constexpr double kGrading = 3.0;

struct Layout {
  std::vector<double> mesh;
  std::vector<double> nodes;
  std::vector<double> weights;
  int gl_order;
};

Layout make_layout(double a, double b, int n_target, int gl_order) {
  if (n_target < 8)
    throw std::invalid_argument("build_operator: n must be >= 8");
  const int panels = std::max(1, n_target / gl_order);
  Layout lay;
  lay.gl_order = gl_order;
  lay.mesh = quad::graded_mesh(a, b, panels, kGrading);
  const auto& rule = quad::gl_rule(gl_order);
  lay.nodes.push_back(a);
  lay.weights.push_back(0.0);
  for (int p = 0; p < panels; ++p) {
    const double lo = lay.mesh[p], hi = lay.mesh[p + 1];
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (int i = 0; i < gl_order; ++i) {
      lay.nodes.push_back(mid + hw * rule.x[i]);
      lay.weights.push_back(hw * rule.w[i]);
    }
  }
  lay.nodes.push_back(b);
  lay.weights.push_back(0.0);
  return lay;
}

int panel_of(const std::vector<double>& mesh, double t) {
  const auto it = std::upper_bound(mesh.begin(), mesh.end(), t);
  int p = static_cast<int>(it - mesh.begin()) - 1;
  return std::clamp(p, 0, static_cast<int>(mesh.size()) - 2);
}

}  // namespace

std::vector<double> green_row(const greens::GreenFn& g,
                              const NystromOperator& op, double t) {
  const std::size_t n = op.size();
  std::vector<double> row(n);
  for (std::size_t j = 0; j < n; ++j)
    row[j] = g(t, op.nodes[j]) * op.weights[j];

  const double a = op.cfg.a, b = op.cfg.b;
  if (!(t > a && t < b)) return row;

  // Product-integration correction on the panel holding t.
  const int p = panel_of(op.mesh, t);
  const double lo = op.mesh[p], hi = op.mesh[p + 1];
  const std::size_t j0 = 1 + static_cast<std::size_t>(p) * op.gl_order;
  const auto& fine = quad::gl_rule(24);

  std::vector<double> fx, fw;
  fx.reserve(48);
  fw.reserve(48);
  for (const auto& [l2, h2] : {std::pair{lo, t}, std::pair{t, hi}}) {
    if (!(h2 > l2)) continue;
    const double mid = 0.5 * (l2 + h2), hw = 0.5 * (h2 - l2);
    for (std::size_t i = 0; i < fine.x.size(); ++i) {
      fx.push_back(mid + hw * fine.x[i]);
      fw.push_back(hw * fine.w[i]);
    }
  }
  std::vector<double> gv(fx.size());
  for (std::size_t i = 0; i < fx.size(); ++i) gv[i] = g(t, fx[i]);

  for (int jj = 0; jj < op.gl_order; ++jj) {
    const std::size_t j = j0 + jj;
    double acc = 0.0;
    for (std::size_t i = 0; i < fx.size(); ++i) {
      double lagrange = 1.0;
      for (int kk = 0; kk < op.gl_order; ++kk) {
        if (kk == jj) continue;
        lagrange *= (fx[i] - op.nodes[j0 + kk]) /
                    (op.nodes[j] - op.nodes[j0 + kk]);
      }
      acc += fw[i] * gv[i] * lagrange;
    }
    row[j] = acc;
  }
  return row;
}

NystromOperator build_operator(const greens::BVPConfig& cfg,
                               const std::function<double(double)>& q,
                               int n_target, Exec exec) {
  const greens::GreenFn g(cfg);
  NystromOperator op;
  op.cfg = cfg;
  auto lay = make_layout(cfg.a, cfg.b, n_target, 8);
  op.mesh = std::move(lay.mesh);
  op.nodes = std::move(lay.nodes);
  op.weights = std::move(lay.weights);
  op.gl_order = lay.gl_order;

  const std::size_t n = op.size();
  op.q.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    op.q[j] = q(op.nodes[j]);
    if (!std::isfinite(op.q[j]))
      throw std::invalid_argument("build_operator: q is non-finite at a node");
  }

  const auto xi_row = green_row(g, op, cfg.xi);
  op.matrix.resize(n * n);
  const int ni = static_cast<int>(n);
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < ni; ++i) {
      const auto row = green_row(g, op, op.nodes[i]);
      const double lam = g.lambda_factor(op.nodes[i]);
      for (int j = 0; j < ni; ++j)
        op.matrix[static_cast<std::size_t>(i) * n + j] =
            (row[j] + lam * xi_row[j]) * op.q[j];
    }
  } else {
    for (int i = 0; i < ni; ++i) {
      const auto row = green_row(g, op, op.nodes[i]);
      const double lam = g.lambda_factor(op.nodes[i]);
      for (int j = 0; j < ni; ++j)
        op.matrix[static_cast<std::size_t>(i) * n + j] =
            (row[j] + lam * xi_row[j]) * op.q[j];
    }
  }
  return op;
}

NystromOperator build_operator(const greens::BVPConfig& cfg,
                               const GridFunction& q, int n_target,
                               Exec exec) {
  return build_operator(
      cfg, [&](double s) { return q(s); }, n_target, exec);
}

SpectralResult spectral_scale(const NystromOperator& op) {
  const std::size_t n = op.size();
  bool all_zero = true;
  for (double qv : op.q)
    if (qv != 0.0) all_zero = false;
  if (all_zero)
    throw std::domain_error("spectral_scale: q vanishes identically");

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      K(op.matrix.data(), n, n);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(K, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw accuracy_error("spectral_scale: eigensolver failed", 0.0);

  const auto& ev = solver.eigenvalues();
  std::size_t dominant = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(ev[i]) > std::abs(ev[dominant])) dominant = i;

  if (ev[dominant].imag() != 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "spectral_scale: dominant eigenvalue is the complex pair "
                  "%.12g +/- %.12gi; refusing to scale",
                  ev[dominant].real(), std::abs(ev[dominant].imag()));
    throw accuracy_error(buf, std::abs(ev[dominant]));
  }
  const double lambda = ev[dominant].real();
  if (lambda == 0.0)
    throw std::domain_error("spectral_scale: lambda* = 0 (q too degenerate)");

  Eigen::VectorXcd vc = solver.eigenvectors().col(dominant);
  // Rotate away any unit-phase factor, then normalize to sup-norm one with
  // a deterministic sign (the largest entry becomes exactly +1).
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(vc[i]) > std::abs(vc[imax])) imax = i;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (vc[i] / vc[imax]).real();

  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double kx = 0.0;
    for (std::size_t j = 0; j < n; ++j) kx += op.at(i, j) * x[j];
    resid = std::max(resid, std::abs(x[i] - kx / lambda));
  }
  return {lambda, GridFunction(op.nodes, std::move(x)), resid};
}

double interpolate(const greens::GreenFn& g, const NystromOperator& op,
                   const std::vector<double>& x, double t) {
  const auto row = green_row(g, op, t);
  const auto xi_row = green_row(g, op, op.cfg.xi);
  const double lam = g.lambda_factor(t);
  double v = 0.0;
  for (std::size_t j = 0; j < op.size(); ++j)
    v += (row[j] + lam * xi_row[j]) * op.q[j] * x[j];
  return v;
}

ResidualReport verify_solution(const greens::BVPConfig& cfg,
                               const std::function<double(double)>& q,
                               const GridFunction& x) {
  if (x.size() < 200)
    throw std::invalid_argument("verify_solution: need n >= 200 samples");
  const int n_target = static_cast<int>(x.size()) - 2;
  NystromOperator op = build_operator(cfg, q, n_target);
  if (op.size() != x.size() ||
      std::abs(op.nodes[1] - x.nodes()[1]) > 1e-12 * (cfg.b - cfg.a))
    throw std::invalid_argument(
        "verify_solution: sample nodes do not match the Nystrom layout");

  const greens::GreenFn g(cfg);
  const auto& xv = x.values();
  ResidualReport rep;
  rep.trivial = x.max_abs() < 1e-14;

  for (std::size_t i = 0; i < op.size(); ++i) {
    double kx = 0.0;
    for (std::size_t j = 0; j < op.size(); ++j) kx += op.at(i, j) * xv[j];
    rep.integral_resid = std::max(rep.integral_resid, std::abs(xv[i] - kx));
  }

  auto x_at = [&](double t) { return interpolate(g, op, xv, t); };
  rep.x_a = std::abs(x_at(cfg.a));

  // x ~ c (t-a)^{mu-1} near a, so the one-sided quotient converges like
  // h^{mu-2}; shrink h accordingly (the interpolant is analytic, so tiny
  // steps stay well-conditioned).
  const double mu = cfg.spec.mu;
  const double ha =
      (cfg.b - cfg.a) * std::min(1e-6, std::pow(1e-5, 1.0 / (mu - 2.0)));
  rep.xprime_a = std::abs((-3.0 * x_at(cfg.a) + 4.0 * x_at(cfg.a + ha) -
                           x_at(cfg.a + 2.0 * ha)) /
                          (2.0 * ha));

  // At b the interpolant carries quadrature noise of order 1e-9; a step
  // around 2e-3 balances that against the h^2 truncation.
  const double hb = 2e-3 * (cfg.b - cfg.a);
  auto one_sided_b = [&](double h) {
    return (3.0 * x_at(cfg.b) - 4.0 * x_at(cfg.b - h) + x_at(cfg.b - 2.0 * h)) /
           (2.0 * h);
  };
  const double d1 = one_sided_b(hb);
  const double d2 = one_sided_b(0.5 * hb);
  const double xprime_b = (4.0 * d2 - d1) / 3.0;
  rep.bc_b = std::abs(xprime_b - cfg.beta * x_at(cfg.xi));
  return rep;
}

double lambda_at(const greens::BVPConfig& cfg,
                 const std::function<double(double)>& q, int n_target) {
  return spectral_scale(build_operator(cfg, q, n_target)).lambda_star;
}

}  // namespace prabhakar::spectral
