#ifndef PRABHAKAR_SPECIAL_FUNCTIONS_HPP_
#define PRABHAKAR_SPECIAL_FUNCTIONS_HPP_

#include <vector>

#include "prabhakar/core.hpp"

namespace prabhakar::sf {

// Largest |z| accepted by the series evaluator. Beyond this the truncated
// series needs an asymptotic expansion we do not provide, so we reject
// instead of returning silently degraded values.
inline constexpr double kMaxAbsZ = 50.0;
inline constexpr double kDefaultTolMl = 1e-14;
inline constexpr int kDefaultMaxTerms = 10000;

/// ln Gamma(x) for x > 0. Relative error <= 1e-13 (delegates to the C
/// library's lgamma through a reentrant wrapper).
double log_gamma(double x);

/// Rising factorial (g)_k = g (g+1) ... (g+k-1), with (g)_0 = 1.
/// Exact for small integer inputs; overflow propagates as +/-infinity.
double pochhammer(double g, int k);

struct MLParams {
  double rho;
  double mu;
  double gamma;
  double z;
};

struct MLResult {
  double value;
  double abs_err;  // tail bound plus rounding estimate
  int terms;       // number of series terms summed
};

// E^gamma_{rho,mu}(z) = sum_k (gamma)_k z^k / (Gamma(rho k + mu) k!)
// for fixed (rho, mu, gamma). Consecutive terms are generated by the
// recurrence t_k = t_{k-1} * z * (gamma+k-1)/k * exp(lg(rho(k-1)+mu) -
// lg(rho k+mu)); the log-gamma difference keeps the ratio finite where
// Gamma(rho k + mu) itself would overflow. Code that evaluates many
// arguments with one parameter triple should call build_table() once
// (before sharing across threads) to cache the per-term ratios.
class MLSeries {
 public:
  MLSeries(double rho, double mu, double gamma,
           double tol = kDefaultTolMl, int max_terms = kDefaultMaxTerms);

  // Precompute the first `terms` recurrence ratios; 512 covers |z| <= 50.
  void build_table(int terms = 512);

  MLResult eval(double z) const;
  double operator()(double z) const { return eval(z).value; }

  double rho() const { return rho_; }
  double mu() const { return mu_; }
  double gamma_param() const { return gamma_; }

 private:
  struct Ratio {
    double hi;
    double lo;
  };
  Ratio ratio_at(int k) const;  // t_k / (z * t_{k-1})
  Ratio compute_ratio(int k) const;

  double rho_, mu_, gamma_, tol_;
  int max_terms_;
  int rho_int_ = 0;           // rho when it is a small integer, else 0
  double first_term_;         // 1/Gamma(mu)
  std::vector<Ratio> ratio_;  // cached ratios for k = 1..table size
};

/// Three-parameter Mittag-Leffler function. Throws std::domain_error for
/// rho <= 0, mu <= 0 (Gamma poles at small k), non-finite parameters or
/// |z| > kMaxAbsZ; throws accuracy_error if max_terms is exhausted.
MLResult ml3(const MLParams& p,
             double tol = kDefaultTolMl, int max_terms = kDefaultMaxTerms);

/// Two-parameter reduction E_{rho,mu}(z) = E^1_{rho,mu}(z).
MLResult ml2(double rho, double mu, double z);

/// Classical Mittag-Leffler function E_rho(z) = E^1_{rho,1}(z).
MLResult ml1(double rho, double z);

// Direct (non-recurrent) evaluation of the k-th series term, used to
// cross-check the recurrence.
double ml3_term(const MLParams& p, int k);

}  // namespace prabhakar::sf

#endif  // PRABHAKAR_SPECIAL_FUNCTIONS_HPP_
