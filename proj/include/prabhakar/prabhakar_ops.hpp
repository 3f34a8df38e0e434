#ifndef PRABHAKAR_PRABHAKAR_OPS_HPP_
#define PRABHAKAR_PRABHAKAR_OPS_HPP_

#include <functional>
#include <string_view>
#include <vector>

#include "prabhakar/core.hpp"
#include "prabhakar/quadrature.hpp"
#include "prabhakar/special_functions.hpp"

namespace prabhakar::ops {

// Parameters of the integral/derivative operator pair: order mu in (2,3],
// kernel parameters (rho, gamma, omega) and the left base point a. The
// operators at base point a are the 0+ operators shifted by u -> u - a.
struct PrabhakarSpec {
  double rho;
  double mu;
  double gamma;
  double omega;
  double a;
  int m = 3;

  void validate() const;
};

// Linear combination of power terms c * (u - a)^p with p > -1. This is both
// the CLI's input language for f and q, and the class of inputs for which
// the operators have closed forms.
class PowerSum {
 public:
  struct Term {
    double coeff;
    double power;
  };

  PowerSum() = default;
  explicit PowerSum(std::vector<Term> terms);

  // Accepts e.g. "1", "2.5*(u-a)^0.5", "(s-a)^2 + 3*(s-a) - 1". Any single
  // letter is allowed as the variable name. Throws std::invalid_argument.
  static PowerSum parse(std::string_view expr);

  double eval(double u, double a) const;
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Term> terms_;
};

// Kernel of the integral operator: (t-s)^{mu_eff-1} E^gamma_{rho,mu_eff}
// (omega (t-s)^rho). Requires t > s >= a and mu_eff > 0.
double prabhakar_kernel(double t, double s, const PrabhakarSpec& spec,
                        double mu_eff);

struct QuadOptions {
  double tol_rel = 1e-9;
  bool adaptive = true;  // false: single fixed-order pass (derivative path)
  int fixed_order = 16;
};

// Integral operator of order mu_eff at the spec's kernel parameters:
//   int_a^x (x-u)^{mu_eff-1} E^gamma_{rho,mu_eff}(omega (x-u)^rho) f(u) du.
// mu_eff defaults to spec.mu when <= 0 is passed.
quad::Result prabhakar_integral(const std::function<double(double)>& f,
                                double x, const PrabhakarSpec& spec,
                                double mu_eff, const QuadOptions& opt = {});

// Closed form of the integral operator applied to (u-a)^{nu-1}:
//   Gamma(nu) (x-a)^{mu_eff+nu-1} E^gamma_{rho,mu_eff+nu}(omega (x-a)^rho).
// Obtained by integrating the kernel series termwise against the power;
// serves as the independent oracle for the quadrature path.
double power_law_oracle(double nu, double x, const PrabhakarSpec& spec,
                        double mu_eff);

// Exact integral operator on a PowerSum via power_law_oracle, term by term.
double prabhakar_integral(const PowerSum& f, double x,
                          const PrabhakarSpec& spec, double mu_eff);

// Riemann-Liouville integral of order mu_eff, coded without the ML kernel;
// equals the gamma = 0 Prabhakar integral.
quad::Result rl_integral(const std::function<double(double)>& f, double x,
                         double mu_eff, double a, const QuadOptions& opt = {});

// Inner operator of the derivative: order 3 - mu with gamma negated. The
// kernel exponent 2 - mu lies in (-1, 0), so the integrand is weakly
// singular at u = x; rejects mu = 3 (callers use the classical path).
quad::Result inner_prabhakar_integral_singular(
    const std::function<double(double)>& f, double x,
    const PrabhakarSpec& spec, const QuadOptions& opt = {});

struct DerivResult {
  double value;
  double abs_err;
};

// Prabhakar derivative of order mu: third x-derivative of the inner
// operator, via Ridders-style Richardson extrapolation of central
// differences starting at h0 = (x-a)/64. For mu = 3 the inner operator is
// the identity and this reduces to the classical third derivative of f.
DerivResult prabhakar_derivative(const std::function<double(double)>& f,
                                 double x, const PrabhakarSpec& spec);

// Fast path for power-sum inputs: the inner operator is composed in closed
// form through power_law_oracle before differencing, bypassing quadrature
// entirely. For mu = 3 the third derivative is taken analytically.
DerivResult prabhakar_derivative(const PowerSum& f, double x,
                                 const PrabhakarSpec& spec);

// One of the m homogeneous kernel functions
//   (t-a)^{mu-j} E^gamma_{rho,mu-j+1}(omega (t-a)^rho),   j = 1..3;
// these span the null space of the derivative operator.
std::function<double(double)> kernel_basis_function(const PrabhakarSpec& spec,
                                                    int j);

}  // namespace prabhakar::ops

#endif  // PRABHAKAR_PRABHAKAR_OPS_HPP_
