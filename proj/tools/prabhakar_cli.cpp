// Batch front end for the Prabhakar BVP toolkit. Exit codes: 0 success,
// 2 usage error, 3 numerical/module failure, 4 criterion failure in
// `reproduce`.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "prabhakar/bvp_spectral.hpp"
#include "prabhakar/greens_function.hpp"
#include "prabhakar/hw_inequality.hpp"
#include "prabhakar/json_writer.hpp"
#include "prabhakar/prabhakar_ops.hpp"
#include "prabhakar/reproduce.hpp"
#include "prabhakar/special_functions.hpp"

namespace {

using namespace prabhakar;

struct BvpFlags {
  double a = 0.0, b = 1.0, xi = 0.5, beta = 0.0;
  double rho = 1.0, mu = 2.5, gamma = 0.0, omega = 0.0;

  greens::BVPConfig config() const {
    return {a, b, xi, beta, {rho, mu, gamma, omega, a}};
  }
};

void add_bvp_flags(CLI::App* cmd, BvpFlags& f) {
  cmd->add_option("--a", f.a, "left endpoint");
  cmd->add_option("--b", f.b, "right endpoint");
  cmd->add_option("--xi", f.xi, "nonlocal point (a < xi < b)");
  cmd->add_option("--beta", f.beta, "nonlocal coupling (must be >= 0)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--rho", f.rho, "kernel parameter rho > 0")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mu", f.mu, "order mu in (2,3]");
  cmd->add_option("--gamma", f.gamma, "kernel parameter gamma");
  cmd->add_option("--omega", f.omega, "kernel parameter omega");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text << "\n";
}

// --q accepts either a power expression or a CSV sample file (t,value rows).
std::function<double(double)> parse_q(const std::string& arg, double a) {
  const bool looks_like_file =
      arg.size() > 4 && arg.substr(arg.size() - 4) == ".csv";
  if (looks_like_file) {
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open q file: " + arg);
    std::vector<double> ts, vs;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 't') continue;
      double t = 0.0, v = 0.0;
      if (std::sscanf(line.c_str(), "%lf,%lf", &t, &v) == 2) {
        ts.push_back(t);
        vs.push_back(v);
      }
    }
    auto grid = std::make_shared<GridFunction>(std::move(ts), std::move(vs));
    return [grid](double s) { return (*grid)(s); };
  }
  auto expr = std::make_shared<ops::PowerSum>(ops::PowerSum::parse(arg));
  return [expr, a](double s) { return expr->eval(s, a); };
}

void json_residuals(io::JsonWriter& w, const spectral::ResidualReport& r) {
  w.begin_object();
  w.key("integral_resid").value(r.integral_resid);
  w.key("x_a").value(r.x_a);
  w.key("xprime_a").value(r.xprime_a);
  w.key("bc_b_resid").value(r.bc_b);
  w.key("trivial").value(r.trivial);
  w.end_object();
}

void json_inequality(io::JsonWriter& w, const hw::InequalityReport& r) {
  w.begin_object();
  w.key("lhs").value(r.lhs);
  w.key("rhs_stated").value(r.rhs_stated);
  w.key("rhs_proof").value(r.rhs_proof);
  w.key("margin_stated").value(r.margin_stated);
  w.key("margin_proof").value(r.margin_proof);
  w.key("holds_stated").value(r.holds_stated);
  w.key("holds_proof").value(r.holds_proof);
  w.key("provenance")
      .value(r.provenance == hw::Provenance::spectral_scaled
                 ? "spectral_scaled"
                 : "user_supplied");
  w.end_object();
}

void json_bvp(io::JsonWriter& w, const greens::BVPConfig& c) {
  w.begin_object();
  w.key("a").value(c.a);
  w.key("b").value(c.b);
  w.key("xi").value(c.xi);
  w.key("beta").value(c.beta);
  w.key("rho").value(c.spec.rho);
  w.key("mu").value(c.spec.mu);
  w.key("gamma").value(c.spec.gamma);
  w.key("omega").value(c.spec.omega);
  w.end_object();
}

int run_ml_eval(double rho, double mu, double gamma, double z,
                const std::string& out) {
  const auto r = sf::ml3({rho, mu, gamma, z});
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("subcommand").value("ml-eval");
  w.key("value").value(r.value);
  w.key("abs_err").value(r.abs_err);
  w.key("terms").value(r.terms);
  w.end_object();
  emit(w.str(), out);
  return 0;
}

int run_int(const BvpFlags& f, const std::string& fexpr, double x,
            double mu_eff, const std::string& out) {
  const ops::PrabhakarSpec spec{f.rho, f.mu, f.gamma, f.omega, f.a};
  const auto fsum = ops::PowerSum::parse(fexpr);
  const auto quadr = ops::prabhakar_integral(
      [&](double u) { return fsum.eval(u, f.a); }, x, spec, mu_eff);
  const double closed = ops::prabhakar_integral(fsum, x, spec, mu_eff);
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("subcommand").value("prabhakar-int");
  w.key("value").value(quadr.value);
  w.key("abs_err").value(quadr.abs_err);
  w.key("closed_form").value(closed);
  w.end_object();
  emit(w.str(), out);
  return 0;
}

int run_deriv(const BvpFlags& f, const std::string& fexpr, double x,
              const std::string& out) {
  const ops::PrabhakarSpec spec{f.rho, f.mu, f.gamma, f.omega, f.a};
  const auto fsum = ops::PowerSum::parse(fexpr);
  const auto r = ops::prabhakar_derivative(fsum, x, spec);
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("subcommand").value("prabhakar-deriv");
  w.key("value").value(r.value);
  w.key("abs_err").value(r.abs_err);
  w.end_object();
  emit(w.str(), out);
  return 0;
}

int run_greens(const BvpFlags& f, int grid_n, const std::string& json_out,
               const std::string& csv_out) {
  const auto cfg = f.config();
  const auto check = greens::validate_config(cfg);
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("subcommand").value("greens");
  w.key("config_valid").value(check.valid());
  w.key("denominator").value(check.denom);
  if (check.valid()) {
    const auto rep = greens::green_property_check(cfg, grid_n);
    w.key("nonneg").value(rep.nonneg);
    w.key("monotone").value(rep.monotone);
    w.key("bounds").value(rep.bounds);
    w.key("worst_violation").begin_object();
    w.key("t").value(rep.worst.t);
    w.key("s").value(rep.worst.s);
    w.key("value").value(rep.worst.value);
    w.end_object();
    w.key("power_ratio").value(rep.power_ratio_ok);
    w.key("ml_ratio").value(rep.ml_ratio_ok);
    w.key("ml_ratio_worst").begin_object();
    w.key("t").value(rep.ml_ratio_worst.t);
    w.key("s").value(rep.ml_ratio_worst.s);
    w.key("value").value(rep.ml_ratio_worst.value);
    w.end_object();
    w.key("n_grid").value(rep.n_grid);
  }
  w.end_object();
  emit(w.str(), json_out);

  if (!csv_out.empty()) {
    if (!check.valid())
      throw std::runtime_error("greens: invalid config, no grid emitted");
    const greens::GreenFn g(cfg);
    const auto nodes = greens::chebyshev_nodes(cfg.a, cfg.b, grid_n);
    const auto vals = greens::green_grid_values(g, nodes, nodes, Exec::openmp);
    std::ofstream csv(csv_out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + csv_out);
    csv << "t,s,G\n";
    for (int i = 0; i < grid_n; ++i)
      for (int j = 0; j < grid_n; ++j)
        csv << io::format_double(nodes[i]) << ','
            << io::format_double(nodes[j]) << ','
            << io::format_double(vals[static_cast<std::size_t>(i) * grid_n + j])
            << '\n';
  }
  return 0;
}

int run_make_instance(const BvpFlags& f, const std::string& qexpr, int n,
                      const std::string& json_out, const std::string& csv_out) {
  const auto cfg = f.config();
  const auto q = parse_q(qexpr, f.a);
  const auto inst = hw::run_manufactured(cfg, q, n);
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("subcommand").value("make-instance");
  w.key("lambda_star").value(inst.lambda_star);
  w.key("eigen_residual").value(inst.eigen_residual);
  w.key("residuals");
  json_residuals(w, inst.residuals);
  w.key("report");
  json_inequality(w, inst.report);
  w.key("nodes").value(inst.x_star.nodes());
  w.key("x_values").value(inst.x_star.values());
  w.end_object();
  emit(w.str(), json_out);

  if (!csv_out.empty()) {
    std::ofstream csv(csv_out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open " + csv_out);
    csv << "t,x\n";
    for (std::size_t i = 0; i < inst.x_star.size(); ++i)
      csv << io::format_double(inst.x_star.nodes()[i]) << ','
          << io::format_double(inst.x_star.values()[i]) << '\n';
  }
  return 0;
}

int run_certify(const BvpFlags& f, const std::string& qexpr,
                const std::string& provenance, int n, const std::string& out) {
  const auto cfg = f.config();
  const auto q = parse_q(qexpr, f.a);
  io::JsonWriter w;
  w.begin_object();
  w.key("schema").value("prabhakar-kit/1");
  w.key("subcommand").value("certify");
  w.key("config");
  json_bvp(w, cfg);
  if (provenance == "spectral") {
    const auto inst = hw::run_manufactured(cfg, q, n);
    w.key("lambda_star").value(inst.lambda_star);
    w.key("residuals");
    json_residuals(w, inst.residuals);
    w.key("report");
    json_inequality(w, inst.report);
  } else {
    const auto rep = hw::certify(cfg, q, hw::Provenance::user_supplied);
    w.key("report");
    json_inequality(w, rep);
  }
  w.end_object();
  emit(w.str(), out);
  return 0;
}

int run_sweep(const std::string& grid_file, const std::string& out) {
  std::ifstream in(grid_file);
  if (!in) throw std::runtime_error("cannot open grid file: " + grid_file);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_array())
    throw std::runtime_error("grid file must hold a JSON array of configs");

  std::ostringstream lines;
  for (const auto& item : doc) {
    BvpFlags f;
    f.a = item.value("a", 0.0);
    f.b = item.value("b", 1.0);
    f.xi = item.value("xi", 0.5 * (f.a + f.b));
    f.beta = item.value("beta", 0.0);
    f.rho = item.value("rho", 1.0);
    f.mu = item.value("mu", 2.5);
    f.gamma = item.value("gamma", 0.0);
    f.omega = item.value("omega", 0.0);
    const std::string qexpr = item.value("q", std::string("1"));
    const int n = item.value("n", 200);

    const auto cfg = f.config();
    const auto q = parse_q(qexpr, f.a);
    const auto inst = hw::run_manufactured(cfg, q, n);
    io::JsonWriter w;
    w.begin_object();
    w.key("schema").value("prabhakar-kit/1");
    w.key("config");
    json_bvp(w, cfg);
    w.key("q").value(qexpr);
    w.key("lambda_star").value(inst.lambda_star);
    w.key("residuals");
    json_residuals(w, inst.residuals);
    w.key("report");
    json_inequality(w, inst.report);
    w.end_object();
    lines << w.str() << "\n";
  }
  if (out.empty()) {
    std::cout << lines.str();
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + out);
    os << lines.str();
  }
  return 0;
}

int run_reproduce(const std::string& out) {
  const auto results = reproduce::run_all();
  emit(reproduce::summary_json(results), out);
  for (const auto& r : results) {
    std::fprintf(stderr, "[%s] %2d %-28s observed %.6g (tol %.3g)\n",
                 r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.observed,
                 r.threshold);
  }
  for (const auto& r : results)
    if (!r.pass) return 4;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prabhakar fractional BVP toolkit"};
  app.require_subcommand(1);

  // ml-eval
  double ml_rho = 1.0, ml_mu = 1.0, ml_gamma = 1.0, ml_z = 0.0;
  std::string ml_out;
  auto* ml = app.add_subcommand("ml-eval",
                                "evaluate the three-parameter Mittag-Leffler "
                                "function");
  ml->add_option("--rho", ml_rho)->required()->check(CLI::PositiveNumber);
  ml->add_option("--mu", ml_mu)->required();
  ml->add_option("--gamma", ml_gamma)->required();
  ml->add_option("--z", ml_z)->required();
  ml->add_option("--out", ml_out, "output path (default stdout)");

  // prabhakar-int / prabhakar-deriv
  BvpFlags int_f;
  std::string int_fexpr = "1";
  double int_x = 1.0, int_mu_eff = 0.0;
  std::string int_out;
  auto* pint = app.add_subcommand("prabhakar-int",
                                  "apply the integral operator to a power "
                                  "expression");
  add_bvp_flags(pint, int_f);
  pint->add_option("--f", int_fexpr, "integrand, e.g. '1+2*(u-a)^0.5'");
  pint->add_option("--x", int_x)->required();
  pint->add_option("--mu-eff", int_mu_eff, "operator order (default mu)");
  pint->add_option("--out", int_out);

  BvpFlags der_f;
  std::string der_fexpr = "1";
  double der_x = 0.5;
  std::string der_out;
  auto* pder = app.add_subcommand("prabhakar-deriv",
                                  "apply the derivative operator to a power "
                                  "expression");
  add_bvp_flags(pder, der_f);
  pder->add_option("--f", der_fexpr);
  pder->add_option("--x", der_x)->required();
  pder->add_option("--out", der_out);

  // greens
  BvpFlags gr_f;
  int gr_n = 64;
  std::string gr_json, gr_csv;
  auto* gr = app.add_subcommand("greens",
                                "evaluate the Green's function grid and its "
                                "structural properties");
  add_bvp_flags(gr, gr_f);
  gr->add_option("--grid-n", gr_n)->check(CLI::Range(16, 4096));
  gr->add_option("--json-out", gr_json);
  gr->add_option("--csv-out", gr_csv);

  // make-instance
  BvpFlags mi_f;
  std::string mi_q = "1";
  int mi_n = 200;
  std::string mi_json, mi_csv;
  auto* mi = app.add_subcommand("make-instance",
                                "manufacture a nontrivial solution by "
                                "spectral scaling");
  add_bvp_flags(mi, mi_f);
  mi->add_option("--q", mi_q, "q as power expression or CSV file");
  mi->add_option("--n", mi_n)->check(CLI::Range(8, 4096));
  mi->add_option("--json-out", mi_json);
  mi->add_option("--csv-out", mi_csv);

  // certify
  BvpFlags ce_f;
  std::string ce_q = "1";
  std::string ce_prov = "user";
  int ce_n = 200;
  std::string ce_out;
  auto* ce = app.add_subcommand("certify",
                                "evaluate both sides of the necessary "
                                "inequality for q");
  add_bvp_flags(ce, ce_f);
  ce->add_option("--q", ce_q, "q as power expression or CSV file");
  ce->add_option("--provenance", ce_prov, "user | spectral")
      ->check(CLI::IsMember({"user", "spectral"}));
  ce->add_option("--n", ce_n)->check(CLI::Range(8, 4096));
  ce->add_option("--json-out,--out", ce_out);

  // certify-sweep
  std::string sw_grid, sw_out;
  auto* sw = app.add_subcommand("certify-sweep",
                                "run the manufactured-instance pipeline over "
                                "a JSON config grid, one JSON line each");
  sw->add_option("--grid", sw_grid)->required();
  sw->add_option("--out", sw_out);

  // reproduce
  std::string rp_out;
  auto* rp = app.add_subcommand("reproduce",
                                "run the full verification battery and emit "
                                "the summary table");
  rp->add_option("--out", rp_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ml->parsed()) return run_ml_eval(ml_rho, ml_mu, ml_gamma, ml_z, ml_out);
    if (pint->parsed())
      return run_int(int_f, int_fexpr, int_x, int_mu_eff, int_out);
    if (pder->parsed()) return run_deriv(der_f, der_fexpr, der_x, der_out);
    if (gr->parsed()) return run_greens(gr_f, gr_n, gr_json, gr_csv);
    if (mi->parsed()) return run_make_instance(mi_f, mi_q, mi_n, mi_json, mi_csv);
    if (ce->parsed()) return run_certify(ce_f, ce_q, ce_prov, ce_n, ce_out);
    if (sw->parsed()) return run_sweep(sw_grid, sw_out);
    if (rp->parsed()) return run_reproduce(rp_out);
  } catch (const std::exception& e) {
    io::JsonWriter w;
    w.begin_object();
    w.key("schema").value("prabhakar-kit/1");
    w.key("error").value(e.what());
    w.end_object();
    std::cerr << w.str() << "\n";
    return 3;
  }
  return 0;
}
