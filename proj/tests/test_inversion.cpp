#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "xpz/inversion.hpp"
#include "xpz/jost.hpp"
#include "xpz/specfun.hpp"

using namespace xpz;
using xpz::testing::PolyGen;

TEST_CASE("g_from_target basics") {
  CHECK(g_from_target(ExpPoly::constant(1.0)).empty());
  ExpPoly not_normalized = ExpPoly::constant(0.9);
  CHECK_THROWS_AS(g_from_target(not_normalized), std::invalid_argument);
}

TEST_CASE("zeta target coefficients follow the normalized pattern") {
  const double sigma = 2.0;
  const int n_terms = 64;
  const ExpPoly F = zeta_target_poly(sigma, n_terms);
  CHECK(std::abs(F.coeff_sum() - cplx(1.0, 0.0)) < 1e-15);

  double partial = 0.0;
  for (int n = 1; n <= n_terms; ++n) partial += std::pow(n, -sigma);
  const double c = 1.0 / partial;

  const ExpPoly g = g_from_target(F);
  CHECK(std::abs(g.coeff(Rational(1)) - cplx((1.0 - c) / 4.0, 0.0)) < 1e-15);
  for (int n : {2, 5, 64}) {
    CHECK(std::abs(g.coeff(Rational(n)) - cplx(-c / 4.0 * std::pow(n, -sigma), 0.0)) < 1e-15);
  }
  CHECK(g.vanishes_at_zero(1e-14));
}

TEST_CASE("g_1 approaches (1 - 6/pi^2)/4 as the truncation grows") {
  const ExpPoly g = g_from_target(zeta_target_poly(2.0, 20000));
  const double limit = (1.0 - 6.0 / (M_PI * M_PI)) / 4.0;  // 0.0980182...
  CHECK(std::abs(g.coeff(Rational(1)).real() - limit) < 1e-5);
}

TEST_CASE("single-frequency fixed point hits the quadratic root") {
  // g = c (2^{it} - 1) closes on itself: a = alpha (2^{it} - 1) with
  // 2 alpha^2 + alpha = c.
  const double c = 0.125;
  ExpPoly g;
  g.add_term(Rational(2), cplx(c, 0.0));
  g.add_term(Rational(1), cplx(-c, 0.0));

  auto [a, report] = fixed_point_solve(g, InversionPolicy{200, 1e-16, Rational(1024), 1e-14});
  CHECK(report.converged);

  const double alpha = (std::sqrt(2.0) - 1.0) / 4.0;
  CHECK(std::abs(a.coeff(Rational(2)) - cplx(alpha, 0.0)) < 1e-12);
  CHECK(std::abs(a.coeff(Rational(1)) + cplx(alpha, 0.0)) < 1e-12);
  CHECK(a.size() == 2);

  // scalar-map oracle for the same closure
  CHECK(std::abs(xpz::testing::scalar_fixed_point(c) - alpha) < 1e-14);
}

TEST_CASE("zero source gives the zero potential") {
  auto [a, report] = fixed_point_solve(ExpPoly::zero(), InversionPolicy{});
  CHECK(a.empty());
  CHECK(report.converged);
  CHECK(report.iterations_used == 1);
}

TEST_CASE("fixed-point iterate matches the explicit order-3 expansion") {
  PolyGen gen(97);
  ExpPoly g = gen.real_poly(6, true, /*uhp_only=*/true);
  g *= cplx(0.2, 0.0);

  // two unpruned iterations from a0 = g
  const InversionPolicy raw{2, 0.0, Rational(1 << 30), 0.0};
  auto [a2, report] = fixed_point_solve(g, raw);
  (void)report;

  const ExpPoly gg = star_product(g, g);
  ExpPoly expansion = g + gg + star_product(g, gg) + star_product(gg, g) + star_product(gg, gg);
  CHECK(a2.max_coeff_distance(expansion) < 1e-13);
}

TEST_CASE("series orders enumerate Catalan-many bracketings") {
  PolyGen gen(103);
  ExpPoly g = gen.real_poly(4, true, /*uhp_only=*/true);
  g *= cplx(0.15, 0.0);

  const auto orders = xpz::testing::series_orders(g, 5);
  for (int n = 1; n <= 5; ++n) {
    const auto trees = xpz::testing::star_bracketings(g, n);
    CHECK(bigint(trees.size()) == catalan(static_cast<unsigned>(n - 1)));
    ExpPoly sum;
    for (const ExpPoly& t : trees) sum += t;
    CHECK(sum.max_coeff_distance(orders[static_cast<std::size_t>(n)]) < 1e-12);
  }
}

TEST_CASE("reconstruction residual of the closed-form solution") {
  const double c = 0.125;
  ExpPoly g;
  g.add_term(Rational(2), cplx(c, 0.0));
  g.add_term(Rational(1), cplx(-c, 0.0));
  const double alpha = (std::sqrt(2.0) - 1.0) / 4.0;
  ExpPoly a;
  a.add_term(Rational(2), cplx(alpha, 0.0));
  a.add_term(Rational(1), cplx(-alpha, 0.0));

  ExpPoly target = ExpPoly::constant(1.0) - 4.0 * g;
  auto rule = [&target](double t) { return target.eval(t); };
  const auto grid = linspace(0.0, 50.0, 512);
  CHECK(reconstruction_residual(a, rule, grid) < 1e-12);

  // one bare iteration is strictly worse than the fixed point
  CHECK(reconstruction_residual(g, rule, grid) > 1e-4);

  auto one_rule = [](double) { return cplx(1.0, 0.0); };
  CHECK(reconstruction_residual(ExpPoly::zero(), one_rule, grid) == 0.0);
}

TEST_CASE("convergence diagnostics for zeta targets") {
  const int n_terms = 64;
  const ExpPoly g2 = g_from_target(zeta_target_poly(2.0, n_terms));
  double partial = 0.0;
  for (int n = 1; n <= n_terms; ++n) partial += std::pow(n, -2.0);
  const double c2 = 1.0 / partial;

  const auto grid = linspace(0.0, 100.0, 1024);
  const auto zs2 = build_jost(JostModel::zeta_sigma(2.0));
  auto rep2 = convergence_diagnostics(g2, [&](double t) { return zs2(t); }, grid);
  CHECK(rep2.g_l1 == doctest::Approx((1.0 - c2) / 2.0).epsilon(1e-12));
  CHECK(rep2.catalan_bound_ok);
  CHECK(rep2.sup_dev <= 1.0 + 1e-9);

  // sigma = 1.5 violates the l1 bound while the sup criterion still holds
  const ExpPoly g15 = g_from_target(zeta_target_poly(1.5, 400));
  const auto zs15 = build_jost(JostModel::zeta_sigma(1.5));
  auto rep15 = convergence_diagnostics(g15, [&](double t) { return zs15(t); }, grid);
  CHECK(rep15.g_l1 > 0.25);
  CHECK_FALSE(rep15.catalan_bound_ok);
  CHECK(rep15.sup_dev <= 1.0 + 1e-9);

  auto rep0 = convergence_diagnostics(ExpPoly::zero(), [](double) { return cplx(1.0, 0.0); },
                                      grid);
  CHECK(rep0.g_l1 == 0.0);
  CHECK(rep0.catalan_bound_ok);
}

TEST_CASE("small zeta inversion converges and reconstructs") {
  const int n_terms = 16;
  const ExpPoly target = zeta_target_poly(2.0, n_terms);
  const ExpPoly g = g_from_target(target);
  InversionPolicy policy = InversionPolicy::for_terms(n_terms);
  auto [a, report] = fixed_point_solve(g, policy);
  CHECK(report.converged);
  CHECK(report.catalan_bound_ok);
  CHECK(report.final_residual < policy.convergence_tol);

  auto rule = [&target](double t) { return target.eval(t); };
  const auto grid = linspace(0.0, 50.0, 512);
  CHECK(reconstruction_residual(a, rule, grid, &policy) < 1e-8);
}

TEST_CASE("critical sigma solves zeta(sigma) = 2") {
  const double sc = critical_sigma();
  CHECK(std::abs(sc - 1.72865) < 5e-5);
  CHECK(std::abs(zeta(cplx(sc, 0.0)).real() - 2.0) < 1e-10);
}

TEST_CASE("policy validation") {
  CHECK_THROWS_AS(InversionPolicy::for_terms(0), std::invalid_argument);
  CHECK_THROWS_AS(zeta_target_poly(0.9, 16), std::invalid_argument);
  ExpPoly bad = ExpPoly::constant(0.5);
  CHECK_THROWS_AS(fixed_point_solve(bad, InversionPolicy{}), std::invalid_argument);
}
