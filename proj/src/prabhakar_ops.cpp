#include "prabhakar/prabhakar_ops.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>

namespace prabhakar::ops {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::domain_error(msg);
}

double safe_pow(double base, double p) {
  if (base <= 0.0) {
    if (p == 0.0) return 1.0;
    return base == 0.0 ? (p > 0.0 ? 0.0 : HUGE_VAL) : std::nan("");
  }
  return std::pow(base, p);
}

}  // namespace

void PrabhakarSpec::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho))
    fail("PrabhakarSpec: rho must be positive");
  if (!(mu > 2.0 && mu <= 3.0))
    fail("PrabhakarSpec: mu must lie in (2, 3]");
  if (m != 3) fail("PrabhakarSpec: m must be 3");
  if (!std::isfinite(gamma) || !std::isfinite(omega) || !std::isfinite(a))
    fail("PrabhakarSpec: non-finite parameter");
}

PowerSum::PowerSum(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff) || !std::isfinite(t.power))
      throw std::invalid_argument("PowerSum: non-finite term");
    if (t.power <= -1.0)
      throw std::invalid_argument("PowerSum: power must be > -1");
  }
}

PowerSum PowerSum::parse(std::string_view expr) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("PowerSum: empty expression");

  // Split into signed terms at top-level +/- (not inside parens, not the
  // sign of an exponent as in 1e-3).
  std::vector<std::string> pieces;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '+' || c == '-') && depth == 0 && i > 0) {
      const char prev = s[i - 1];
      if (prev == 'e' || prev == 'E' || prev == '*' || prev == '^' ||
          prev == '+' || prev == '-')
        continue;
      pieces.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  pieces.push_back(s.substr(start));

  auto parse_num = [](const std::string& str) {
    char* end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (end != str.c_str() + str.size() || str.empty())
      throw std::invalid_argument("PowerSum: bad number '" + str + "'");
    return v;
  };

  std::vector<Term> terms;
  for (std::string piece : pieces) {
    double sign = 1.0;
    while (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
      if (piece[0] == '-') sign = -sign;
      piece.erase(piece.begin());
    }
    if (piece.empty())
      throw std::invalid_argument("PowerSum: dangling sign");
    const std::size_t lp = piece.find('(');
    if (lp == std::string::npos) {
      terms.push_back({sign * parse_num(piece), 0.0});
      continue;
    }
    double coeff = 1.0;
    if (lp > 0) {
      std::string c = piece.substr(0, lp);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coeff = parse_num(c);
    }
    const std::size_t rp = piece.find(')', lp);
    if (rp == std::string::npos)
      throw std::invalid_argument("PowerSum: unbalanced parens in '" + piece +
                                  "'");
    const std::string inner = piece.substr(lp + 1, rp - lp - 1);
    if (inner.size() != 3 ||
        !std::isalpha(static_cast<unsigned char>(inner[0])) ||
        inner[1] != '-' || inner[2] != 'a')
      throw std::invalid_argument("PowerSum: expected '(<var>-a)', got '(" +
                                  inner + ")'");
    double power = 1.0;
    if (rp + 1 < piece.size()) {
      if (piece[rp + 1] != '^')
        throw std::invalid_argument("PowerSum: expected '^' after ')' in '" +
                                    piece + "'");
      power = parse_num(piece.substr(rp + 2));
    }
    terms.push_back({sign * coeff, power});
  }
  return PowerSum(std::move(terms));
}

double PowerSum::eval(double u, double a) const {
  const double d = std::max(u - a, 0.0);
  double v = 0.0;
  for (const auto& t : terms_) v += t.coeff * safe_pow(d, t.power);
  return v;
}

double prabhakar_kernel(double t, double s, const PrabhakarSpec& spec,
                        double mu_eff) {
  spec.validate();
  if (!(t > s)) fail("prabhakar_kernel: requires t > s");
  if (!(s >= spec.a)) fail("prabhakar_kernel: requires s >= a");
  if (!(mu_eff > 0.0)) fail("prabhakar_kernel: requires mu_eff > 0");
  const double d = t - s;
  const sf::MLParams p{spec.rho, mu_eff, spec.gamma,
                       spec.omega * std::pow(d, spec.rho)};
  return std::pow(d, mu_eff - 1.0) * sf::ml3(p).value;
}

namespace {

quad::Result convolve(const std::function<double(double)>& f, double x,
                      double a, const std::function<double(double)>& kernel,
                      const QuadOptions& opt) {
  if (!(x > a)) fail("prabhakar_integral: requires x > a");
  const double length = x - a;
  quad::Options qo;
  qo.tol_rel = opt.tol_rel;
  if (!opt.adaptive) qo.order_ladder = {opt.fixed_order};
  // Each half in its own offset coordinate: the kernel argument stays exact
  // near u = x and f's argument stays exact near u = a.
  return quad::integrate_endpoint_singular(
      [&](double sigma) { return kernel(sigma) * f(x - sigma); },
      [&](double tau) { return kernel(length - tau) * f(a + tau); }, length,
      qo);
}

}  // namespace

quad::Result prabhakar_integral(const std::function<double(double)>& f,
                                double x, const PrabhakarSpec& spec,
                                double mu_eff, const QuadOptions& opt) {
  spec.validate();
  if (mu_eff <= 0.0) mu_eff = spec.mu;
  sf::MLSeries ml(spec.rho, mu_eff, spec.gamma);
  ml.build_table();
  const double rho = spec.rho, omega = spec.omega, e = mu_eff - 1.0;
  return convolve(
      f, x, spec.a,
      [&](double sigma) {
        return std::pow(sigma, e) * ml(omega * std::pow(sigma, rho));
      },
      opt);
}

double power_law_oracle(double nu, double x, const PrabhakarSpec& spec,
                        double mu_eff) {
  spec.validate();
  if (!(nu > 0.0)) fail("power_law_oracle: requires nu > 0");
  if (!(x > spec.a)) fail("power_law_oracle: requires x > a");
  if (mu_eff <= 0.0) mu_eff = spec.mu;
  const double d = x - spec.a;
  const sf::MLParams p{spec.rho, mu_eff + nu, spec.gamma,
                       spec.omega * std::pow(d, spec.rho)};
  return std::exp(sf::log_gamma(nu)) * std::pow(d, mu_eff + nu - 1.0) *
         sf::ml3(p).value;
}

double prabhakar_integral(const PowerSum& f, double x,
                          const PrabhakarSpec& spec, double mu_eff) {
  if (mu_eff <= 0.0) mu_eff = spec.mu;
  double v = 0.0;
  for (const auto& t : f.terms())
    v += t.coeff * power_law_oracle(t.power + 1.0, x, spec, mu_eff);
  return v;
}

quad::Result rl_integral(const std::function<double(double)>& f, double x,
                         double mu_eff, double a, const QuadOptions& opt) {
  if (!(mu_eff > 0.0)) fail("rl_integral: requires mu_eff > 0");
  const double inv_gamma = std::exp(-sf::log_gamma(mu_eff));
  const double e = mu_eff - 1.0;
  return convolve(
      f, x, a,
      [&](double sigma) { return inv_gamma * std::pow(sigma, e); }, opt);
}

quad::Result inner_prabhakar_integral_singular(
    const std::function<double(double)>& f, double x,
    const PrabhakarSpec& spec, const QuadOptions& opt) {
  spec.validate();
  const double order = spec.m - spec.mu;
  if (!(order > 0.0))
    fail("inner integral: mu = 3 has order 0; use the classical path");
  sf::MLSeries ml(spec.rho, order, -spec.gamma);
  ml.build_table();
  const double rho = spec.rho, omega = spec.omega, e = order - 1.0;
  return convolve(
      f, x, spec.a,
      [&](double sigma) {
        return std::pow(sigma, e) * ml(omega * std::pow(sigma, rho));
      },
      opt);
}

namespace {

// Ridders-style extrapolated central third difference. F must be smooth on
// a neighbourhood of x covered by +/- 2 h0.
DerivResult third_derivative(const std::function<double(double)>& F, double x,
                             double h0) {
  constexpr int kLevels = 7;
  constexpr double kTolRel = 1e-6;
  double tab[kLevels][kLevels];
  double best = 0.0;
  double best_err = HUGE_VAL;
  double h = h0;
  for (int i = 0; i < kLevels; ++i, h *= 0.5) {
    tab[i][0] =
        (F(x + 2.0 * h) - 2.0 * F(x + h) + 2.0 * F(x - h) - F(x - 2.0 * h)) /
        (2.0 * h * h * h);
    double fac = 4.0;
    for (int j = 1; j <= i; ++j, fac *= 4.0) {
      tab[i][j] = (fac * tab[i][j - 1] - tab[i - 1][j - 1]) / (fac - 1.0);
      const double err = std::max(std::abs(tab[i][j] - tab[i][j - 1]),
                                  std::abs(tab[i][j] - tab[i - 1][j - 1]));
      if (err <= best_err) {
        best_err = err;
        best = tab[i][j];
      }
    }
    if (i > 0) {
      const double scale = std::max(std::abs(best), 1.0);
      if (best_err <= kTolRel * scale) break;
      // Noise floor: the finest diagonal got markedly worse, stop refining.
      if (std::abs(tab[i][i] - tab[i - 1][i - 1]) > 4.0 * best_err &&
          best_err < scale)
        break;
    }
  }
  return {best, best_err};
}

}  // namespace

DerivResult prabhakar_derivative(const std::function<double(double)>& f,
                                 double x, const PrabhakarSpec& spec) {
  spec.validate();
  if (!(x > spec.a)) fail("prabhakar_derivative: requires x > a");
  const double h0 = (x - spec.a) / 64.0;
  if (spec.mu == 3.0) {
    // Inner order m - mu = 0: the inner operator is the identity and the
    // Prabhakar derivative degenerates to the classical third derivative.
    return third_derivative(f, x, h0);
  }
  QuadOptions qopt;
  qopt.adaptive = false;  // keep quadrature error smooth in x
  qopt.fixed_order = 16;
  auto inner = [&](double t) {
    return inner_prabhakar_integral_singular(f, t, spec, qopt).value;
  };
  return third_derivative(inner, x, h0);
}

DerivResult prabhakar_derivative(const PowerSum& f, double x,
                                 const PrabhakarSpec& spec) {
  spec.validate();
  if (!(x > spec.a)) fail("prabhakar_derivative: requires x > a");
  if (spec.mu == 3.0) {
    double v = 0.0;
    for (const auto& t : f.terms())
      v += t.coeff * t.power * (t.power - 1.0) * (t.power - 2.0) *
           safe_pow(x - spec.a, t.power - 3.0);
    return {v, 0.0};
  }
  // Compose the inner operator in closed form: applied to (u-a)^{nu-1} it
  // gives Gamma(nu) (t-a)^{3-mu+nu-1} E^{-gamma}_{rho,3-mu+nu}(...).
  const double order = spec.m - spec.mu;
  struct Piece {
    double coeff;
    double expo;
    sf::MLSeries ml;
  };
  std::vector<Piece> pieces;
  for (const auto& t : f.terms()) {
    const double nu = t.power + 1.0;
    pieces.push_back({t.coeff * std::exp(sf::log_gamma(nu)),
                      order + nu - 1.0,
                      sf::MLSeries(spec.rho, order + nu, -spec.gamma)});
    pieces.back().ml.build_table();
  }
  const double a = spec.a, rho = spec.rho, omega = spec.omega;
  auto inner = [&](double t) {
    const double d = t - a;
    double v = 0.0;
    for (const auto& p : pieces)
      v += p.coeff * std::pow(d, p.expo) * p.ml(omega * std::pow(d, rho));
    return v;
  };
  return third_derivative(inner, x, (x - spec.a) / 64.0);
}

std::function<double(double)> kernel_basis_function(const PrabhakarSpec& spec,
                                                    int j) {
  spec.validate();
  if (j < 1 || j > spec.m)
    fail("kernel_basis_function: j must be in 1..m");
  const double e = spec.mu - j;
  const auto ml =
      std::make_shared<sf::MLSeries>(spec.rho, spec.mu - j + 1.0, spec.gamma);
  ml->build_table();
  const double a = spec.a, rho = spec.rho, omega = spec.omega;
  return [=](double t) {
    const double d = t - a;
    return std::pow(d, e) * (*ml)(omega * std::pow(d, rho));
  };
}

}  // namespace prabhakar::ops
