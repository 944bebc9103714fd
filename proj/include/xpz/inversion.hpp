#pragma once

#include <functional>
#include <span>
#include <utility>

#include "xpz/dirichlet.hpp"
#include "xpz/exppoly.hpp"

namespace xpz {

// Truncation policy of the fixed-point solver.  Pruning the star square is
// the only lossy step; the defaults keep O(10^4) terms at sigma = 2,
// n_terms = 64 desk scale.
struct InversionPolicy {
  int max_iterations = 200;
  double coeff_floor = 1e-12;
  Rational max_frequency = Rational(4096);
  double convergence_tol = 1e-10;

  static InversionPolicy for_terms(int n_terms);
};

struct ConvergenceReport {
  double g_l1 = 0.0;              // sum |g_n| over all coefficients
  bool catalan_bound_ok = false;  // g_l1 <= 1/4 (sufficient, not necessary)
  double sup_dev = 0.0;           // sup |F_target - 1| on the grid
  int iterations_used = 0;
  double final_residual = 0.0;    // sup-grid norm of the last iterate change
  bool converged = false;
};

// Normalized truncation of the zeta target: F(t) = C sum_{n<=N} n^{-sigma+it}
// with C = 1 / sum_{n<=N} n^{-sigma}, so F(0) = 1 exactly.
ExpPoly zeta_target_poly(double sigma, int n_terms);

// g = (1 - F)/4; requires F(0) = 1 within 1e-12.  Result vanishes at 0.
ExpPoly g_from_target(const ExpPoly& F);

// Iterates a <- g + prune(a * a) from a0 = g until the sup-grid change over
// t in [0, 50] (2048 points) drops below convergence_tol.  Non-convergence
// is reported, not thrown.
std::pair<ExpPoly, ConvergenceReport> fixed_point_solve(const ExpPoly& g,
                                                        const InversionPolicy& policy = {});

// Bound and sup diagnostics for a target without running the solver.
ConvergenceReport convergence_diagnostics(const ExpPoly& g,
                                          const std::function<cplx(double)>& f_target,
                                          std::span<const double> t_grid);

// sup_t |(1 - 4(a - a*a))(t) - F_target(t)|.  When a policy is supplied the
// star square is pruned with it, measuring the residual on the retained
// frequency set (the solver's own algebra).
double reconstruction_residual(const ExpPoly& a, const std::function<cplx(double)>& f_target,
                               std::span<const double> t_grid,
                               const InversionPolicy* policy = nullptr);

// Root of zeta(sigma) = 2 on (1, 2): the threshold below which the l1
// convergence bound fails for zeta targets.
double critical_sigma();

}  // namespace xpz
