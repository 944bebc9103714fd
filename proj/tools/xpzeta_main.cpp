// xpzeta command-line front end.  Every subcommand is a thin adapter over
// the library: parse flags, call one pipeline, emit one table plus a run
// metadata JSON.  Exit codes: 0 success, 2 validation failure, 3 numerical
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "xpz/dirichlet.hpp"
#include "xpz/emit.hpp"
#include "xpz/inversion.hpp"
#include "xpz/jost.hpp"
#include "xpz/oracle.hpp"
#include "xpz/specfun.hpp"
#include "xpz/spectra.hpp"
#include "xpz/version.hpp"

namespace {

using nlohmann::json;
using namespace xpz;

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(bigint(text), bigint(1));
  return Rational(bigint(text.substr(0, slash)), bigint(text.substr(slash + 1)));
}

void write_metadata(const std::string& output_path, const std::string& subcommand,
                    const json& params, const json& extra = json::object()) {
  json meta{{"tool", "xpzeta"},
            {"version", kVersion},
            {"subcommand", subcommand},
            {"parameters", params},
            {"output", output_path}};
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  write_text(output_path + ".meta.json", meta.dump(2) + "\n");
}

JostModel make_model(const std::string& name, double a1, const std::string& x1, double mu,
                     double sigma) {
  if (name == "step") return JostModel::step(a1, parse_rational(x1));
  if (name == "critical") return JostModel::critical_target(mu);
  if (name == "smooth") return JostModel::smooth_asymptotic();
  if (name == "zeta-sigma") return JostModel::zeta_sigma(sigma);
  throw CLI::ValidationError("--model", "unknown model: " + name);
}

long long as_ll(std::size_t v) { return static_cast<long long>(v); }

int run(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for the interacting xp model of the Riemann zeros"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Optional key=value config file (flags take precedence)");
  app.require_subcommand(1);

  std::string output = "out.csv";
  std::string format = "csv";
  app.add_option("--output,-o", output, "Output file path")->capture_default_str();
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // counting
  auto* sc_counting = app.add_subcommand("counting", "Semiclassical counting function N(E)");
  std::string variant = "berry-keating";
  double e_lo = 1.0, e_hi = 100.0, lambda_cut = 1e3, l_x = 1.0;
  int points = 256;
  sc_counting->add_option("--variant", variant, "berry-keating, connes or box")
      ->check(CLI::IsMember({"berry-keating", "connes", "box"}))
      ->capture_default_str();
  sc_counting->add_option("--e-lo", e_lo)->capture_default_str();
  sc_counting->add_option("--e-hi", e_hi)->capture_default_str();
  sc_counting->add_option("--points", points)->capture_default_str();
  sc_counting->add_option("--lambda", lambda_cut, "Cutoff for connes/box")->capture_default_str();
  sc_counting->add_option("--lx", l_x, "Inner cutoff for box")->capture_default_str();

  // xp-spectrum
  auto* sc_xp = app.add_subcommand("xp-spectrum", "Finite-box xp eigenvalues");
  double n_box = 535.491655524764736;  // e^{2 pi}
  double alpha = 3.14159265358979323846;
  int n_lo = 0, n_hi = 16;
  sc_xp->add_option("--n-box", n_box, "Box cutoff N")->capture_default_str();
  sc_xp->add_option("--alpha", alpha, "Self-adjoint extension angle")->capture_default_str();
  sc_xp->add_option("--n-lo", n_lo)->capture_default_str();
  sc_xp->add_option("--n-hi", n_hi)->capture_default_str();

  // rd-spectrum
  auto* sc_rd = app.add_subcommand("rd-spectrum", "Russian Doll one-body spectrum");
  double rd_g = 1.0, rd_h = 1.0, rd_n = 100.0, win_lo = -50.0, win_hi = 0.99;
  sc_rd->add_option("--g", rd_g, "BCS coupling")->capture_default_str();
  sc_rd->add_option("--h", rd_h, "Time-reversal-breaking coupling")->capture_default_str();
  sc_rd->add_option("--n-band", rd_n, "Band edge N")->capture_default_str();
  sc_rd->add_option("--window-lo", win_lo)->capture_default_str();
  sc_rd->add_option("--window-hi", win_hi)->capture_default_str();

  // smooth-zeros
  auto* sc_smooth = app.add_subcommand("smooth-zeros", "Smooth approximation to the zeros");
  int count = 20;
  sc_smooth->add_option("--count", count, "Number of zeros")->capture_default_str();

  // true-zeros
  auto* sc_true = app.add_subcommand("true-zeros", "Zeros of Z(t) by sign-change scan");
  double t_lo = 0.0, t_hi = 100.0, step = 0.01;
  sc_true->add_option("--t-lo", t_lo)->capture_default_str();
  sc_true->add_option("--t-hi", t_hi)->capture_default_str();
  sc_true->add_option("--step", step)->capture_default_str();

  // step-demo
  auto* sc_step = app.add_subcommand("step-demo", "Step-potential bound states");
  double a1 = 1.0;
  std::string x1 = "2";
  double sd_lo = 0.0, sd_hi = 40.0, scan_step = 0.0;
  sc_step->add_option("--a1", a1)->capture_default_str();
  sc_step->add_option("--x1", x1, "Step edge as integer or p/q")->capture_default_str();
  sc_step->add_option("--t-lo", sd_lo)->capture_default_str();
  sc_step->add_option("--t-hi", sd_hi)->capture_default_str();
  sc_step->add_option("--scan-step", scan_step, "0 = automatic")->capture_default_str();

  // argand
  auto* sc_argand = app.add_subcommand("argand", "Jost function trace for Argand plots");
  std::string model = "step";
  double mu = 0.5, sigma = 2.0, ar_lo = 0.0, ar_hi = 40.0, ar_step = 0.01;
  sc_argand->add_option("--model", model, "step, critical, smooth or zeta-sigma")
      ->check(CLI::IsMember({"step", "critical", "smooth", "zeta-sigma"}))
      ->capture_default_str();
  sc_argand->add_option("--a1", a1)->capture_default_str();
  sc_argand->add_option("--x1", x1)->capture_default_str();
  sc_argand->add_option("--mu", mu)->capture_default_str();
  sc_argand->add_option("--sigma", sigma)->capture_default_str();
  sc_argand->add_option("--t-lo", ar_lo)->capture_default_str();
  sc_argand->add_option("--t-hi", ar_hi)->capture_default_str();
  sc_argand->add_option("--step", ar_step)->capture_default_str();

  // invert
  auto* sc_invert = app.add_subcommand("invert", "Perturbative potential reconstruction");
  double inv_sigma = 2.0, inv_lo = 10.0, inv_hi = 25.0, coeff_floor = 1e-12, conv_tol = 1e-10;
  int n_terms = 64, inv_points = 512, max_iterations = 200;
  std::string poly_out;
  sc_invert->add_option("--sigma", inv_sigma)->capture_default_str();
  sc_invert->add_option("--n-terms", n_terms)->capture_default_str();
  sc_invert->add_option("--t-lo", inv_lo)->capture_default_str();
  sc_invert->add_option("--t-hi", inv_hi)->capture_default_str();
  sc_invert->add_option("--points", inv_points)->capture_default_str();
  sc_invert->add_option("--max-iterations", max_iterations)->capture_default_str();
  sc_invert->add_option("--coeff-floor", coeff_floor)->capture_default_str();
  sc_invert->add_option("--convergence-tol", conv_tol)->capture_default_str();
  sc_invert->add_option("--poly-out", poly_out, "Also write the potential as poly JSON");

  // mellin-check
  auto* sc_mellin = app.add_subcommand("mellin-check", "Mellin transform of a potential");
  std::string potential = "sine";
  double ml_lo = 30.0, ml_hi = 60.0;
  int ml_points = 10;
  sc_mellin->add_option("--potential", potential, "step or sine")
      ->check(CLI::IsMember({"step", "sine"}))
      ->capture_default_str();
  sc_mellin->add_option("--a1", a1)->capture_default_str();
  sc_mellin->add_option("--x1", x1)->capture_default_str();
  sc_mellin->add_option("--t-lo", ml_lo)->capture_default_str();
  sc_mellin->add_option("--t-hi", ml_hi)->capture_default_str();
  sc_mellin->add_option("--points", ml_points)->capture_default_str();

  // matrix-oracle
  auto* sc_matrix = app.add_subcommand("matrix-oracle", "Discretized inverse-Hamiltonian spectrum");
  std::string mx_model = "free";
  double mx_n = 535.491655524764736, edge = 4.0, threshold = 0.05;
  int m_points = 1000;
  std::string eigvec_dump;
  sc_matrix->add_option("--model", mx_model, "free or step")
      ->check(CLI::IsMember({"free", "step"}))
      ->capture_default_str();
  sc_matrix->add_option("--n-box", mx_n)->capture_default_str();
  sc_matrix->add_option("--m-points", m_points)->capture_default_str();
  sc_matrix->add_option("--a1", a1)->capture_default_str();
  sc_matrix->add_option("--x1", x1)->capture_default_str();
  sc_matrix->add_option("--edge", edge, "Localization edge in x")->capture_default_str();
  sc_matrix->add_option("--threshold", threshold, "Tail/peak localization threshold")
      ->capture_default_str();
  sc_matrix->add_option("--eigvec-dump", eigvec_dump,
                        "Binary dump of eigenvectors (little-endian float64 re,im rows)");

  // validate-jost
  auto* sc_validate = app.add_subcommand("validate-jost", "Reality/regularity/positivity report");
  std::string vj_model = "step";
  double vj_lo = 0.0, vj_hi = 40.0;
  int vj_points = 2048;
  sc_validate->add_option("--model", vj_model, "step, critical, smooth or zeta-sigma")
      ->check(CLI::IsMember({"step", "critical", "smooth", "zeta-sigma"}))
      ->capture_default_str();
  sc_validate->add_option("--a1", a1)->capture_default_str();
  sc_validate->add_option("--x1", x1)->capture_default_str();
  sc_validate->add_option("--mu", mu)->capture_default_str();
  sc_validate->add_option("--sigma", sigma)->capture_default_str();
  sc_validate->add_option("--t-lo", vj_lo)->capture_default_str();
  sc_validate->add_option("--t-hi", vj_hi)->capture_default_str();
  sc_validate->add_option("--points", vj_points)->capture_default_str();

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const EmitFormat fmt = parse_format(format);

  if (*sc_counting) {
    Table table;
    table.columns = {"energy", "count"};
    CountingVariant v = variant == "berry-keating" ? CountingVariant::berry_keating
                        : variant == "connes"      ? CountingVariant::connes
                                                   : CountingVariant::box;
    for (double e : linspace(e_lo, e_hi, static_cast<std::size_t>(points))) {
      table.add_row({e, counting(v, e, lambda_cut, l_x)});
    }
    write_table(table, fmt, output);
    write_metadata(output, "counting",
                   {{"variant", variant},
                    {"e_lo", e_lo},
                    {"e_hi", e_hi},
                    {"points", points},
                    {"lambda", lambda_cut},
                    {"lx", l_x}});
    return 0;
  }

  if (*sc_xp) {
    Table table;
    table.columns = {"n", "energy", "kind", "residual"};
    const auto lines = xp_eigenvalues({n_box, alpha}, n_lo, n_hi);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      table.add_row({as_ll(static_cast<std::size_t>(n_lo) + i), lines[i].energy,
                     std::string(to_string(lines[i].kind)), lines[i].residual});
    }
    write_table(table, fmt, output);
    write_metadata(output, "xp-spectrum",
                   {{"n_box", n_box}, {"alpha", alpha}, {"n_lo", n_lo}, {"n_hi", n_hi}});
    return 0;
  }

  if (*sc_rd) {
    Table table;
    table.columns = {"index", "energy", "branch"};
    const auto roots = rd_solve({rd_g, rd_h, rd_n}, win_lo, win_hi);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      table.add_row({as_ll(i), roots[i].energy, static_cast<long long>(roots[i].branch)});
    }
    write_table(table, fmt, output);
    write_metadata(output, "rd-spectrum",
                   {{"g", rd_g},
                    {"h", rd_h},
                    {"n_band", rd_n},
                    {"window_lo", win_lo},
                    {"window_hi", win_hi}});
    return 0;
  }

  if (*sc_smooth) {
    Table table;
    table.columns = {"n", "energy"};
    for (int n = 1; n <= count; ++n) table.add_row({static_cast<long long>(n), smooth_zero(n)});
    write_table(table, fmt, output);
    write_metadata(output, "smooth-zeros", {{"count", count}},
                   {{"tolerances", {{"theta_residual", 5e-11}}}});
    return 0;
  }

  if (*sc_true) {
    Table table;
    table.columns = {"n", "t"};
    const auto result = zscan_true_zeros(t_lo, t_hi, step);
    for (std::size_t i = 0; i < result.zeros.size(); ++i) {
      table.add_row({as_ll(i + 1), result.zeros[i]});
    }
    write_table(table, fmt, output);
    write_metadata(output, "true-zeros",
                   {{"t_lo", t_lo}, {"t_hi", t_hi}, {"step", step}},
                   {{"step_warning", result.step_warning},
                    {"tolerances", {{"bisection", 1e-8}}}});
    return 0;
  }

  if (*sc_step) {
    const auto F = build_jost(JostModel::step(a1, parse_rational(x1)));
    const auto zeros = find_real_zeros(F, sd_lo, sd_hi, scan_step);
    Table table;
    table.columns = {"energy", "kind", "residual"};
    for (const auto& z : zeros) {
      table.add_row({z.energy, std::string(to_string(z.kind)), z.residual});
    }
    write_table(table, fmt, output);
    write_metadata(output, "step-demo",
                   {{"a1", a1}, {"x1", x1}, {"t_lo", sd_lo}, {"t_hi", sd_hi}},
                   {{"tolerances", {{"zero_accept", 1e-10}}}});
    return 0;
  }

  if (*sc_argand) {
    const auto F = build_jost(make_model(model, a1, x1, mu, sigma));
    Table table;
    table.columns = {"t", "re_F", "im_F"};
    const auto n_steps = static_cast<std::size_t>(std::floor((ar_hi - ar_lo) / ar_step + 1e-9));
    for (std::size_t i = 0; i <= n_steps; ++i) {
      const double t = ar_lo + ar_step * static_cast<double>(i);
      const cplx v = F(t);
      table.add_row({t, v.real(), v.imag()});
    }
    write_table(table, fmt, output);
    write_metadata(output, "argand",
                   {{"model", model},
                    {"a1", a1},
                    {"x1", x1},
                    {"mu", mu},
                    {"sigma", sigma},
                    {"t_lo", ar_lo},
                    {"t_hi", ar_hi},
                    {"step", ar_step}});
    return 0;
  }

  if (*sc_invert) {
    InversionPolicy policy = InversionPolicy::for_terms(n_terms);
    policy.max_iterations = max_iterations;
    policy.coeff_floor = coeff_floor;
    policy.convergence_tol = conv_tol;
    const ExpPoly target = zeta_target_poly(inv_sigma, n_terms);
    const ExpPoly g = g_from_target(target);
    auto [a, report] = fixed_point_solve(g, policy);
    if (!report.converged) {
      std::cerr << "invert: fixed point did not converge within " << max_iterations
                << " iterations (last change " << report.final_residual << ")\n";
      return 3;
    }
    Table table;
    table.columns = {"t", "re_a", "im_a"};
    const auto grid = linspace(inv_lo, inv_hi, static_cast<std::size_t>(inv_points));
    const auto vals = eval_grid(a, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      table.add_row({grid[i], vals[i].real(), vals[i].imag()});
    }
    write_table(table, fmt, output);
    if (!poly_out.empty()) write_text(poly_out, poly_to_json(a) + "\n");
    write_metadata(output, "invert",
                   {{"sigma", inv_sigma},
                    {"n_terms", n_terms},
                    {"t_lo", inv_lo},
                    {"t_hi", inv_hi},
                    {"points", inv_points},
                    {"max_iterations", max_iterations},
                    {"coeff_floor", coeff_floor},
                    {"convergence_tol", conv_tol}},
                   {{"report",
                     {{"g_l1", report.g_l1},
                      {"catalan_bound_ok", report.catalan_bound_ok},
                      {"sup_dev", report.sup_dev},
                      {"iterations_used", report.iterations_used},
                      {"final_residual", report.final_residual}}}});
    return 0;
  }

  if (*sc_mellin) {
    const PotentialSpec pot = potential == "step"
                                  ? PotentialSpec::step(a1, parse_rational(x1))
                                  : PotentialSpec::smooth_sine();
    Table table;
    const bool sine = potential == "sine";
    table.columns = sine ? std::vector<std::string>{"t", "re", "im", "asymptotic_dev"}
                         : std::vector<std::string>{"t", "re", "im"};
    for (double t : linspace(ml_lo, ml_hi, static_cast<std::size_t>(ml_points))) {
      const cplx v = mellin(pot, t);
      if (sine) {
        const cplx lead = -2.0 * cplx(0.0, 1.0) / t * std::polar(1.0, 2.0 * rs_theta(t));
        table.add_row({t, v.real(), v.imag(), std::abs(v / lead - 1.0)});
      } else {
        table.add_row({t, v.real(), v.imag()});
      }
    }
    write_table(table, fmt, output);
    write_metadata(output, "mellin-check",
                   {{"potential", potential},
                    {"a1", a1},
                    {"x1", x1},
                    {"t_lo", ml_lo},
                    {"t_hi", ml_hi},
                    {"points", ml_points}},
                   {{"tolerances", {{"quadrature_abs", 1e-8}}}});
    return 0;
  }

  if (*sc_matrix) {
    GridSpec grid{mx_n, m_points};
    std::optional<PotentialSpec> pot;
    if (mx_model == "step") pot = PotentialSpec::step(a1, parse_rational(x1));
    const KernelMatrix matrix = build_matrix(grid, pot ? &*pot : nullptr, nullptr);
    const auto pairs = eigensolve(matrix);
    const auto states = classify_states(pairs, grid, edge, threshold);

    Table table;
    table.columns = {"index", "energy", "kind", "residual"};
    for (std::size_t i = 0; i < states.size(); ++i) {
      table.add_row({as_ll(i), states[i].line.energy,
                     std::string(to_string(states[i].line.kind)), states[i].line.residual});
    }
    write_table(table, fmt, output);

    json extra = json::object();
    if (mx_model == "step") {
      const auto F = build_jost(JostModel::step(a1, parse_rational(x1)));
      const auto rep = compare_eigencondition(states, F, mx_n);
      extra["eigencondition"] = {{"delocalized_max", rep.delocalized_max},
                                 {"delocalized_mean", rep.delocalized_mean},
                                 {"localized_max", rep.localized_max},
                                 {"localized_mean", rep.localized_mean}};
    }
    if (!eigvec_dump.empty()) {
      std::ofstream dump(eigvec_dump, std::ios::binary);
      if (!dump) throw std::runtime_error("cannot open eigvec dump: " + eigvec_dump);
      for (const auto& p : pairs) {
        for (const cplx& u : p.vector) {
          const double re = u.real(), im = u.imag();
          dump.write(reinterpret_cast<const char*>(&re), sizeof(double));
          dump.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
      }
      extra["eigvec_dump"] = eigvec_dump;
    }
    write_metadata(output, "matrix-oracle",
                   {{"model", mx_model},
                    {"n_box", mx_n},
                    {"m_points", m_points},
                    {"a1", a1},
                    {"x1", x1},
                    {"edge", edge},
                    {"threshold", threshold}},
                   extra);
    return 0;
  }

  if (*sc_validate) {
    const auto F = build_jost(make_model(vj_model, a1, x1, mu, sigma));
    const auto grid = linspace(vj_lo, vj_hi, static_cast<std::size_t>(vj_points));
    const auto rep = validate(F, grid);
    json out{{"reality_max", rep.reality_max},
             {"regularity", rep.regularity},
             {"min_re", rep.min_re},
             {"min_re_location", rep.min_re_location}};
    if (rep.type_i_identity_max) out["type_i_identity_max"] = *rep.type_i_identity_max;
    if (rep.uhp_min_re) out["uhp_min_re"] = *rep.uhp_min_re;
    write_text(output, out.dump(2) + "\n");
    write_metadata(output, "validate-jost",
                   {{"model", vj_model},
                    {"a1", a1},
                    {"x1", x1},
                    {"mu", mu},
                    {"sigma", sigma},
                    {"t_lo", vj_lo},
                    {"t_hi", vj_hi},
                    {"points", vj_points}});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError&) {
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"numerical\",\"message\":\"" << e.what() << "\"}\n";
    return 3;
  }
}
