#ifndef PRABHAKAR_GREENS_FUNCTION_HPP_
#define PRABHAKAR_GREENS_FUNCTION_HPP_

#include <vector>

#include "prabhakar/core.hpp"
#include "prabhakar/prabhakar_ops.hpp"
#include "prabhakar/special_functions.hpp"

namespace prabhakar::greens {

// Interval [a,b], nonlocal point xi, coupling beta and the operator
// parameters. spec.a must agree with a.
struct BVPConfig {
  double a;
  double b;
  double xi;
  double beta;
  ops::PrabhakarSpec spec;
};

struct ConfigCheck {
  bool ordering = false;        // a < xi < b
  bool beta_nonneg = false;     // beta >= 0
  bool power_condition = false; // beta (xi-a)^{mu-1} < (mu-1)(b-a)^{mu-2}
  bool denom_positive = false;  // D > 0
  double denom = 0.0;

  bool valid() const {
    return ordering && beta_nonneg && power_condition && denom_positive;
  }
};

// Reports every admissibility condition plus the computed denominator
//   D = (b-a)^{mu-2} E^g_{r,mu-1}(w (b-a)^r)
//       - beta (xi-a)^{mu-1} E^g_{r,mu}(w (xi-a)^r).
ConfigCheck validate_config(const BVPConfig& cfg);

enum class Branch { s_le_t, t_le_s };

struct GreenEval {
  double t;
  double s;
  double value;
  Branch branch;
};

// Green's function evaluator with the per-config pieces precomputed:
//   A(t) = (t-a)^{mu-1} E^g_{r,mu}(w (t-a)^r)
//   B(s) = (b-s)^{mu-2} E^g_{r,mu-1}(w (b-s)^r)
//   G(t,s) = A(t) B(s) / B(a)            for t <= s
//   G(t,s) = A(t) B(s) / B(a) - P(t-s)   for s <= t,
// with P(d) = d^{mu-1} E^g_{r,mu}(w d^r). Throws config_error when the
// config fails validation.
class GreenFn {
 public:
  explicit GreenFn(const BVPConfig& cfg);

  double A(double t) const;
  double B(double s) const;
  double P(double d) const;  // subtracted term at separation d >= 0
  double operator()(double t, double s) const;

  // Raw ML factors at separation d: E^g_{r,mu}(w d^r), E^g_{r,mu-1}(w d^r).
  double E_mu(double d) const;
  double E_mum1(double d) const;

  // G(b, b-d) straight from the separation d, avoiding the b - s rounding
  // when s sits within an ulp of b.
  double at_b(double d) const;

  double dbar() const { return dbar_; }    // B(a), the ratio denominator
  double denom() const { return denom_; }  // D, with the beta term
  double lambda_factor(double t) const;    // beta A(t) / D
  const BVPConfig& cfg() const { return cfg_; }

 private:
  BVPConfig cfg_;
  sf::MLSeries ml_mu_;    // order mu
  sf::MLSeries ml_mum1_;  // order mu-1
  double dbar_;
  double denom_;
};

GreenEval green_eval(double t, double s, const BVPConfig& cfg);

struct AmplificationFactors {
  double lambda_b;
  double lambda_xi;
};

// Nonlocal amplification coefficients: Lambda_x = beta A(x) / D evaluated
// at x = b (the proof's constant) and x = xi (the stated constant).
AmplificationFactors amplification_factors(const BVPConfig& cfg);

struct Violation {
  double t = 0.0;
  double s = 0.0;
  double value = 0.0;  // most negative margin observed
};

struct PropertyReport {
  int n_grid = 0;
  bool nonneg = false;
  bool monotone = false;
  bool bounds = false;
  Violation worst;           // across the three asserted properties
  bool power_ratio_ok = false;
  bool ml_ratio_ok = false;  // reported, never fatal
  Violation ml_ratio_worst;
};

// Chebyshev-Lobatto nodes on [a, b] (endpoints included).
std::vector<double> chebyshev_nodes(double a, double b, int n);

// Checks nonnegativity, monotonicity in t and the G(a,s) <= G(t,s) <= G(b,s)
// sandwich on an n x n Chebyshev grid, with 1e-12 absolute slack; also
// evaluates the two proof sub-inequalities (power ratio and ML ratio). Grid
// rows are filled in parallel under Exec::openmp with bit-identical results.
PropertyReport green_property_check(const BVPConfig& cfg, int n_grid,
                                    Exec exec = Exec::openmp);

// The value matrix behind the property check, row-major on the same grid;
// exposed for the CSV emitter and the serial/parallel consistency tests.
std::vector<double> green_grid_values(const GreenFn& g,
                                      const std::vector<double>& ts,
                                      const std::vector<double>& ss,
                                      Exec exec);

}  // namespace prabhakar::greens

#endif  // PRABHAKAR_GREENS_FUNCTION_HPP_
