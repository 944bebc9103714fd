#include "xpz/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xpz/specfun.hpp"

namespace xpz {

namespace {

std::vector<double> convergence_grid() { return linspace(0.0, 50.0, 2048); }

double sup_abs(const std::vector<cplx>& vals) {
  double m = 0.0;
  for (const cplx& v : vals) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

InversionPolicy InversionPolicy::for_terms(int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("InversionPolicy: n_terms must be positive");
  InversionPolicy p;
  p.max_frequency = Rational(static_cast<long long>(n_terms) * n_terms);
  return p;
}

ExpPoly zeta_target_poly(double sigma, int n_terms) {
  if (!(sigma > 1.0)) throw std::invalid_argument("zeta_target_poly: requires sigma > 1");
  if (n_terms < 1) throw std::invalid_argument("zeta_target_poly: requires n_terms >= 1");
  double partial = 0.0;
  for (int n = 1; n <= n_terms; ++n) partial += std::pow(n, -sigma);
  const double c = 1.0 / partial;
  ExpPolyBuilder b;
  b.reserve(static_cast<std::size_t>(n_terms));
  for (int n = 1; n <= n_terms; ++n) {
    b.push(Rational(n), cplx(c * std::pow(n, -sigma), 0.0));
  }
  return b.build();
}

ExpPoly g_from_target(const ExpPoly& F) {
  if (std::abs(F.coeff_sum() - cplx(1.0, 0.0)) > 1e-12) {
    throw std::invalid_argument("g_from_target: target not normalized to F(0) = 1");
  }
  ExpPoly g = F * cplx(-0.25, 0.0);
  g.add_term(Rational(1), cplx(0.25, 0.0));
  return g;
}

std::pair<ExpPoly, ConvergenceReport> fixed_point_solve(const ExpPoly& g,
                                                        const InversionPolicy& policy) {
  if (!g.vanishes_at_zero(1e-12)) {
    throw std::invalid_argument("fixed_point_solve: g must vanish at t = 0");
  }
  ConvergenceReport rep;
  rep.g_l1 = g.l1_norm();
  rep.catalan_bound_ok = rep.g_l1 <= 0.25 + 1e-15;

  const auto grid = convergence_grid();
  {
    const auto gv = eval_grid(g, grid);
    double sup = 0.0;
    for (const cplx& v : gv) sup = std::max(sup, 4.0 * std::abs(v));  // |F_target - 1| = |4 g|
    rep.sup_dev = sup;
  }

  ExpPoly a = g;
  for (int it = 1; it <= policy.max_iterations; ++it) {
    ExpPoly next = g + star_square(a).pruned(policy.coeff_floor, policy.max_frequency);
    ExpPoly diff = next - a;
    a = std::move(next);
    rep.iterations_used = it;

    // l1 of the coefficient change bounds the grid sup-norm from above, so
    // the grid evaluation only runs once the cheap bound gets close.
    const double l1 = diff.l1_norm();
    if (l1 < policy.convergence_tol) {
      rep.final_residual = sup_abs(eval_grid(diff, grid));
      rep.converged = true;
      break;
    }
    if (l1 < 1e3 * policy.convergence_tol) {
      const double sup = sup_abs(eval_grid(diff, grid));
      rep.final_residual = sup;
      if (sup < policy.convergence_tol) {
        rep.converged = true;
        break;
      }
    } else {
      rep.final_residual = l1;
    }
  }
  return {std::move(a), rep};
}

ConvergenceReport convergence_diagnostics(const ExpPoly& g,
                                          const std::function<cplx(double)>& f_target,
                                          std::span<const double> t_grid) {
  ConvergenceReport rep;
  rep.g_l1 = g.l1_norm();
  rep.catalan_bound_ok = rep.g_l1 <= 0.25 + 1e-15;
  double sup = 0.0;
  for (double t : t_grid) sup = std::max(sup, std::abs(f_target(t) - cplx(1.0, 0.0)));
  rep.sup_dev = sup;
  return rep;
}

double reconstruction_residual(const ExpPoly& a, const std::function<cplx(double)>& f_target,
                               std::span<const double> t_grid, const InversionPolicy* policy) {
  ExpPoly square = star_square(a);
  if (policy) square = square.pruned(policy->coeff_floor, policy->max_frequency);
  ExpPoly reconstructed = ExpPoly::constant(1.0) - 4.0 * (a - square);
  double sup = 0.0;
  std::vector<double> grid(t_grid.begin(), t_grid.end());
  const auto vals = eval_grid(reconstructed, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup = std::max(sup, std::abs(vals[i] - f_target(grid[i])));
  }
  return sup;
}

double critical_sigma() {
  double lo = 1.5, hi = 2.0;  // zeta(1.5) > 2, zeta(2) < 2
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (zeta(cplx(mid, 0.0)).real() > 2.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace xpz
