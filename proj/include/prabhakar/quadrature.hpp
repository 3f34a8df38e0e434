#ifndef PRABHAKAR_QUADRATURE_HPP_
#define PRABHAKAR_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "prabhakar/core.hpp"

namespace prabhakar::quad {

// Gauss-Legendre rule on [-1, 1]; nodes found by Newton iteration on the
// Legendre recurrence.
struct GaussLegendre {
  explicit GaussLegendre(int n);
  std::vector<double> x;
  std::vector<double> w;
};

// Cached rules for the handful of orders used across the toolkit.
const GaussLegendre& gl_rule(int n);

// Panel boundaries on [0, length] refined geometrically toward 0 (ratio
// `ratio` per panel) until the head panel is below depth * length.
// Endpoint algebraic singularities of any integrable strength are then
// resolved by plain Gauss panels, since every panel away from the head sees
// the integrand over a bounded log-scale range.
std::vector<double> geometric_mesh(double length, double ratio = 3.0,
                                   double depth = 1e-120);

// Panel boundaries on [a, b] with symmetric polynomial grading
// psi(u) = u^g / (u^g + (1-u)^g); used for the Nystrom node layout.
std::vector<double> graded_mesh(double a, double b, int panels,
                                double grading = 3.0);

// Composite Gauss-Legendre over an explicit mesh.
double composite(const std::function<double(double)>& f,
                 const std::vector<double>& mesh, const GaussLegendre& rule);

struct Result {
  double value;
  double abs_err;
};

struct Options {
  double tol_rel = 1e-9;
  double ratio = 3.0;
  double depth = 1e-120;
  // Orders tried in sequence; the difference between passes is the error
  // estimate. A single entry disables adaptivity (used by the derivative
  // path, which needs quadrature error that varies smoothly with x).
  std::vector<int> order_ladder = {12, 16, 24};
};

// Integrate over [0, L] where the integrand may have integrable algebraic
// singularities at either end. The interval is split at L/2 and each half
// is meshed in its own offset coordinate, so the integrand is always given
// the exact distance to the nearer endpoint:
//   from_left(d)  = f(d)       for d in (0, L/2]
//   from_right(d) = f(L - d)   for d in (0, L/2]
// This keeps endpoint distances far below one ulp of L representable.
// Throws accuracy_error when the order ladder is exhausted above tol.
Result integrate_endpoint_singular(
    const std::function<double(double)>& from_left,
    const std::function<double(double)>& from_right, double length,
    const Options& opt = {});

// Convenience form for integrands with exact absolute coordinates (smooth
// or left-end-singular ones): from_right is derived as f(L - d).
Result integrate_endpoint_singular(const std::function<double(double)>& f,
                                   double length, const Options& opt = {});

}  // namespace prabhakar::quad

#endif  // PRABHAKAR_QUADRATURE_HPP_
