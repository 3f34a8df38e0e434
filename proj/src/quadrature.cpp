#include "prabhakar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>

namespace prabhakar::quad {

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
  x.resize(n);
  w.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton.
    double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      double p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k + 1.0) * xi * p2 - k * p3) / (k + 1.0);
      }
      dp = n * (xi * p1 - p2) / (xi * xi - 1.0);
      const double dx = p1 / dp;
      xi -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    x[i] = -xi;
    x[n - 1 - i] = xi;
    const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
}

const GaussLegendre& gl_rule(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

std::vector<double> geometric_mesh(double length, double ratio, double depth) {
  if (!(length > 0.0))
    throw std::invalid_argument("geometric_mesh: length must be positive");
  const int n_geo =
      static_cast<int>(std::ceil(-std::log(depth) / std::log(ratio)));
  std::vector<double> mesh;
  mesh.reserve(n_geo + 2);
  mesh.push_back(0.0);
  for (int j = n_geo; j >= 0; --j)
    mesh.push_back(length * std::pow(ratio, -j));
  return mesh;
}

std::vector<double> graded_mesh(double a, double b, int panels,
                                double grading) {
  if (panels < 1) throw std::invalid_argument("graded_mesh: panels >= 1");
  std::vector<double> mesh(panels + 1);
  for (int i = 0; i <= panels; ++i) {
    const double u = static_cast<double>(i) / panels;
    const double ug = std::pow(u, grading);
    const double vg = std::pow(1.0 - u, grading);
    mesh[i] = a + (b - a) * (ug / (ug + vg));
  }
  mesh.front() = a;
  mesh.back() = b;
  return mesh;
}

double composite(const std::function<double(double)>& f,
                 const std::vector<double>& mesh, const GaussLegendre& rule) {
  double total = 0.0;
  const int q = static_cast<int>(rule.x.size());
  for (std::size_t p = 0; p + 1 < mesh.size(); ++p) {
    const double lo = mesh[p], hi = mesh[p + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    double panel = 0.0;
    for (int i = 0; i < q; ++i) panel += rule.w[i] * f(mid + hw * rule.x[i]);
    total += hw * panel;
  }
  return total;
}

Result integrate_endpoint_singular(
    const std::function<double(double)>& from_left,
    const std::function<double(double)>& from_right, double length,
    const Options& opt) {
  if (opt.order_ladder.empty())
    throw std::invalid_argument("integrate_endpoint_singular: empty ladder");
  const auto mesh = geometric_mesh(0.5 * length, opt.ratio, opt.depth);
  auto pass = [&](int order) {
    const auto& rule = gl_rule(order);
    return composite(from_left, mesh, rule) + composite(from_right, mesh, rule);
  };

  double value = pass(opt.order_ladder.front());
  if (opt.order_ladder.size() == 1) return {value, 0.0};

  double err = std::abs(value);
  for (std::size_t i = 1; i < opt.order_ladder.size(); ++i) {
    const double next = pass(opt.order_ladder[i]);
    err = std::abs(next - value);
    value = next;
    if (err <= opt.tol_rel * std::max(std::abs(value), 1e-300))
      return {value, err};
  }
  // Small absolute floor so integrals that are exactly zero do not trip the
  // relative test.
  if (err <= 1e-14 * length || err <= opt.tol_rel * std::abs(value))
    return {value, err};
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "quadrature did not reach tol %.3g (estimate %.3g, value %.6g)",
                opt.tol_rel, err, value);
  throw accuracy_error(buf, err);
}

Result integrate_endpoint_singular(const std::function<double(double)>& f,
                                   double length, const Options& opt) {
  return integrate_endpoint_singular(
      f, [&f, length](double d) { return f(length - d); }, length, opt);
}

}  // namespace prabhakar::quad
