#include "xpz/jost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xpz/specfun.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xpz {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kZeroAccept = 1e-10;

void require_potential(const ExpPoly& p, const char* which) {
  if (!p.has_real_coeffs(1e-12)) {
    throw std::invalid_argument(std::string("JostModel: potential ") + which +
                                " must have real coefficients");
  }
  if (!p.vanishes_at_zero(1e-12)) {
    throw std::invalid_argument(std::string("JostModel: potential ") + which +
                                " must vanish at t = 0");
  }
}

JostEval from_poly(ExpPoly F, std::optional<ExpPoly> root) {
  auto poly = std::make_shared<const ExpPoly>(std::move(F));
  JostEval eval;
  eval.closed_form = poly;
  if (root) eval.root = std::make_shared<const ExpPoly>(std::move(*root));
  eval.rule = [poly](cplx z) { return poly->eval(z); };
  return eval;
}

JostEval build_type_i(const ExpPoly& a) {
  require_potential(a, "a");
  ExpPoly root = ExpPoly::constant(1.0) + a;
  ExpPoly F = ExpPoly::constant(1.0) + 2.0 * a + star_square(a);
  return from_poly(std::move(F), std::move(root));
}

cplx theta_phase(cplx z) {
  // e^{2 i theta(z)} = pi^{-iz} Gamma(1/4 + iz/2) / Gamma(1/4 - iz/2)
  const cplx lg_plus = log_gamma(cplx(0.25, 0.0) + 0.5 * kI * z);
  const cplx lg_minus = log_gamma(cplx(0.25, 0.0) - 0.5 * kI * z);
  return std::exp(-kI * z * std::log(M_PI) + lg_plus - lg_minus);
}

}  // namespace

JostModel JostModel::type_i(ExpPoly a) { return JostModel(TypeIModel{std::move(a)}); }

JostModel JostModel::type_ii(ExpPoly a, ExpPoly b) {
  return JostModel(TypeIIModel{std::move(a), std::move(b)});
}

JostModel JostModel::step(double a1, Rational x1) {
  if (!x1.greater_one()) throw std::invalid_argument("StepModel: requires x1 > 1");
  return JostModel(StepModel{a1, std::move(x1)});
}

JostModel JostModel::zeta_sigma(double sigma) {
  if (!(sigma > 1.0)) throw std::invalid_argument("ZetaSigmaModel: requires sigma > 1");
  return JostModel(ZetaSigmaModel{sigma});
}

JostModel JostModel::critical_target(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("CriticalTargetModel: requires mu > 0");
  return JostModel(CriticalTargetModel{mu});
}

JostModel JostModel::smooth_asymptotic() { return JostModel(SmoothAsymptoticModel{}); }

ExpPoly step_bold_a(double a1, const Rational& x1) {
  ExpPoly a;
  a.add_term(x1, cplx(0.5 * a1, 0.0));
  a.add_term(Rational(1), cplx(-0.5 * a1, 0.0));
  return a;
}

JostEval build_jost(const JostModel& model) {
  return std::visit(
      [](const auto& m) -> JostEval {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TypeIModel>) {
          return build_type_i(m.a);
        } else if constexpr (std::is_same_v<T, TypeIIModel>) {
          require_potential(m.a, "a");
          require_potential(m.b, "b");
          const ExpPoly s_ab = s_func(m.a, m.b);
          const ExpPoly s_ba = s_func(m.b, m.a);
          const ExpPoly s_aa = s_func(m.a, m.a);
          const ExpPoly s_bb = s_func(m.b, m.b);
          ExpPoly F = ExpPoly::constant(1.0) - s_ab + s_ba + mul(s_aa, s_bb) - mul(s_ab, s_ba);
          return from_poly(std::move(F), std::nullopt);
        } else if constexpr (std::is_same_v<T, StepModel>) {
          return build_type_i(step_bold_a(m.a1, m.x1));
        } else if constexpr (std::is_same_v<T, ZetaSigmaModel>) {
          const double sigma = m.sigma;
          const cplx norm = 1.0 / zeta(cplx(sigma, 0.0));
          JostEval eval;
          eval.rule = [sigma, norm](cplx z) { return norm * zeta(cplx(sigma, 0.0) - kI * z); };
          return eval;
        } else if constexpr (std::is_same_v<T, CriticalTargetModel>) {
          const double mu = m.mu;
          const double norm = -2.0 * mu / zeta(cplx(0.5, 0.0)).real();
          JostEval eval;
          eval.rule = [mu, norm](cplx z) {
            return norm * (z - 0.5 * kI) / (z + kI * mu) * zeta(cplx(0.5, 0.0) - kI * z);
          };
          return eval;
        } else {
          JostEval eval;
          eval.rule = [](cplx z) { return 2.0 * (1.0 + theta_phase(z)); };
          return eval;
        }
      },
      model.value());
}

ValidationReport validate(const JostEval& F, std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("validate: empty grid");
  ValidationReport rep;
  rep.regularity = std::abs(F(0.0) - cplx(1.0, 0.0));
  rep.min_re = std::numeric_limits<double>::infinity();

  const auto n = static_cast<std::ptrdiff_t>(t_grid.size());
  std::vector<double> reality(t_grid.size());
  std::vector<double> re_f(t_grid.size());
  std::vector<double> identity(F.root ? t_grid.size() : 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double t = t_grid[static_cast<std::size_t>(i)];
    const cplx ft = F(t);
    reality[static_cast<std::size_t>(i)] = std::abs(F(-t) - std::conj(ft));
    re_f[static_cast<std::size_t>(i)] = ft.real();
    if (F.root) {
      const cplx one_plus_a = F.root->eval(t);
      identity[static_cast<std::size_t>(i)] = std::abs(ft.real() - std::norm(one_plus_a));
    }
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    rep.reality_max = std::max(rep.reality_max, reality[i]);
    if (re_f[i] < rep.min_re) {
      rep.min_re = re_f[i];
      rep.min_re_location = t_grid[i];
    }
  }
  if (F.root) {
    rep.type_i_identity_max = *std::max_element(identity.begin(), identity.end());
  }

  if (F.closed_form) {
    // Re F(z) on a coarse upper-half-plane sample, Im z in (0, 5].
    double min_re = std::numeric_limits<double>::infinity();
    const double lo = t_grid.front();
    const double hi = t_grid.back();
    for (int iy = 1; iy <= 16; ++iy) {
      const double y = 5.0 * iy / 16.0;
      for (int ix = 0; ix <= 48; ++ix) {
        const double x = lo + (hi - lo) * ix / 48.0;
        min_re = std::min(min_re, F.at(cplx(x, y)).real());
      }
    }
    rep.uhp_min_re = min_re;
  }
  return rep;
}

namespace {

double golden_refine(const JostEval& F, double a, double b) {
  constexpr double invphi = 0.6180339887498948482;
  auto value = [&](double t) { return std::norm(F(t)); };
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = value(x1);
  double f2 = value(x2);
  for (int it = 0; it < 90 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = value(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

std::vector<SpectralLine> find_real_zeros(const JostEval& F, double t_lo, double t_hi,
                                          double scan_step) {
  if (!(t_lo < t_hi)) throw std::invalid_argument("find_real_zeros: requires t_lo < t_hi");
  if (scan_step <= 0.0) scan_step = (t_hi - t_lo) / 4096.0;

  const auto npts = static_cast<std::size_t>(std::floor((t_hi - t_lo) / scan_step)) + 1;
  std::vector<double> mag2(npts);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(npts); ++i) {
    mag2[static_cast<std::size_t>(i)] = std::norm(F(t_lo + scan_step * static_cast<double>(i)));
  }

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 1; i + 1 < npts; ++i) {
    if (mag2[i] <= mag2[i - 1] && mag2[i] <= mag2[i + 1]) {
      brackets.emplace_back(t_lo + scan_step * static_cast<double>(i - 1),
                            t_lo + scan_step * static_cast<double>(i + 1));
    }
  }

  std::vector<SpectralLine> zeros;
  for (const auto& [a, b] : brackets) {
    const double t = golden_refine(F, a, b);
    const double residual = std::abs(F(t));
    if (residual < kZeroAccept) {
      zeros.push_back({t, StateKind::localized, residual});
    }
  }
  std::sort(zeros.begin(), zeros.end(),
            [](const SpectralLine& x, const SpectralLine& y) { return x.energy < y.energy; });
  return zeros;
}

cplx finite_n_residual(const JostEval& F, double n_box, double energy) {
  if (!(n_box > 1.0)) throw std::invalid_argument("finite_n_residual: requires N > 1");
  return F(energy) + F(-energy) * std::polar(1.0, energy * std::log(n_box));
}

double phase_shift(const JostEval& F, double energy) {
  const cplx num = F(energy);
  if (std::abs(num) <= 1e-12) {
    throw std::runtime_error("phase_shift: |F(E)| vanishes; energy sits at a bound state");
  }
  const cplx ratio = num / F(-energy);
  if (std::abs(std::abs(ratio) - 1.0) > 1e-10) {
    throw std::runtime_error("phase_shift: F(E)/F(-E) is not a phase; reality violated");
  }
  return std::arg(ratio);
}

}  // namespace xpz
