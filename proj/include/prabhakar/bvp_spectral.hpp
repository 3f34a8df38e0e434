#ifndef PRABHAKAR_BVP_SPECTRAL_HPP_
#define PRABHAKAR_BVP_SPECTRAL_HPP_

#include <functional>
#include <vector>

#include "prabhakar/core.hpp"
#include "prabhakar/greens_function.hpp"

namespace prabhakar::spectral {

// Nystrom discretization of the solution representation
//   x(t) = int_a^b G(t,s) q(s) x(s) ds
//          + [beta A(t) / D] int_a^b G(xi,s) q(s) x(s) ds
// on a graded composite Gauss mesh. The node set is the Gauss nodes plus
// both endpoints carried at zero weight, so x(a) and x(b) appear explicitly
// in eigenvectors without perturbing the spectrum.
struct NystromOperator {
  greens::BVPConfig cfg;
  std::vector<double> mesh;     // panel boundaries
  std::vector<double> nodes;    // a, panel Gauss nodes..., b
  std::vector<double> weights;  // zero at both endpoints
  std::vector<double> q;        // q at nodes
  std::vector<double> matrix;   // row-major n x n
  int gl_order = 8;

  std::size_t size() const { return nodes.size(); }
  double at(std::size_t i, std::size_t j) const {
    return matrix[i * nodes.size() + j];
  }
};

// Quadrature weights for int_a^b G(t,s) v(s) ds against nodal values of v.
// Plain kernel-times-weight away from t; on the panel containing t the
// weights are replaced by product integration of G(t,.) against the
// panel's Lagrange basis (fine Gauss rule split at s = t), which restores
// high-order convergence through the kernel's diagonal kink.
std::vector<double> green_row(const greens::GreenFn& g,
                              const NystromOperator& op, double t);

NystromOperator build_operator(const greens::BVPConfig& cfg,
                               const std::function<double(double)>& q,
                               int n_target, Exec exec = Exec::openmp);

// GridFunction variant per the certifier pipeline (samples interpolated).
NystromOperator build_operator(const greens::BVPConfig& cfg,
                               const GridFunction& q, int n_target,
                               Exec exec = Exec::openmp);

struct SpectralResult {
  double lambda_star = 0.0;
  GridFunction x_star;    // sup-norm 1
  double residual = 0.0;  // ||x - K x / lambda||_inf
};

// Largest-magnitude eigenvalue of the kernel matrix and its eigenvector.
// Throws accuracy_error when the dominant eigenvalue is a complex pair
// (both conjugates quoted) and std::domain_error when lambda* == 0.
// Scaling q by 1/lambda* then makes x = K x hold exactly: the scaled
// problem has the eigenvector as a genuine nontrivial solution.
SpectralResult spectral_scale(const NystromOperator& op);

struct ResidualReport {
  double integral_resid = 0.0;  // sup-norm of x - K x
  double x_a = 0.0;
  double xprime_a = 0.0;
  double bc_b = 0.0;  // |x'(b) - beta x(xi)|
  bool trivial = false;
};

// Residuals of a candidate solution for the q passed here (pass the scaled
// q~ = q / lambda* for manufactured instances). Derivative residuals use
// one-sided second-order differences of the Nystrom interpolant; the step
// at a is mu-aware since x ~ (t-a)^{mu-1} makes the difference quotient
// converge like h^{mu-2}.
ResidualReport verify_solution(const greens::BVPConfig& cfg,
                               const std::function<double(double)>& q,
                               const GridFunction& x);

// Nystrom interpolant sum_j row_j(t) q_j w_j x_j at arbitrary t.
double interpolate(const greens::GreenFn& g, const NystromOperator& op,
                   const std::vector<double>& x, double t);

// Dominant eigenvalue at a given resolution; used by the mesh-convergence
// checks.
double lambda_at(const greens::BVPConfig& cfg,
                 const std::function<double(double)>& q, int n_target);

}  // namespace prabhakar::spectral

#endif  // PRABHAKAR_BVP_SPECTRAL_HPP_
