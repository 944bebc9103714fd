#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "xpz/dirichlet.hpp"
#include "xpz/exppoly.hpp"
#include "xpz/spectral_line.hpp"

namespace xpz {

// Model variants.  Type I/II carry bold potentials a(t), b(t) as Dirichlet
// polynomials with real coefficients vanishing at t = 0.
struct TypeIModel {
  ExpPoly a;
};
struct TypeIIModel {
  ExpPoly a;
  ExpPoly b;
};
struct StepModel {
  double a1;
  Rational x1;  // > 1
};
struct ZetaSigmaModel {
  double sigma;  // > 1
};
struct CriticalTargetModel {
  double mu;  // > 0
};
struct SmoothAsymptoticModel {};

class JostModel {
 public:
  using Variant = std::variant<TypeIModel, TypeIIModel, StepModel, ZetaSigmaModel,
                               CriticalTargetModel, SmoothAsymptoticModel>;

  static JostModel type_i(ExpPoly a);
  static JostModel type_ii(ExpPoly a, ExpPoly b);
  static JostModel step(double a1, Rational x1);
  static JostModel zeta_sigma(double sigma);
  static JostModel critical_target(double mu);
  static JostModel smooth_asymptotic();

  const Variant& value() const { return v_; }

 private:
  explicit JostModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Bold potential of a step: (a1/2)(x1^{it} - 1).
ExpPoly step_bold_a(double a1, const Rational& x1);

// Evaluated Jost function.  closed_form is present for the polynomial
// variants and agrees with the pointwise rule; root holds the star-square
// root 1 + a for type I constructions.
struct JostEval {
  std::shared_ptr<const ExpPoly> closed_form;
  std::shared_ptr<const ExpPoly> root;
  std::function<cplx(cplx)> rule;

  cplx operator()(double t) const { return rule(cplx(t, 0.0)); }
  cplx at(cplx z) const { return rule(z); }
};

// F(0) = 1 for every variant except SmoothAsymptotic, whose normalization
// is fixed only asymptotically (F(0) = 4 there).
JostEval build_jost(const JostModel& model);

struct ValidationReport {
  double reality_max = 0.0;   // max |F(-t) - conj F(t)| over the grid
  double regularity = 0.0;    // |F(0) - 1|
  double min_re = 0.0;        // min Re F(t) over the grid
  double min_re_location = 0.0;
  std::optional<double> type_i_identity_max;  // max |Re F - |1 + a|^2| (type I)
  std::optional<double> uhp_min_re;           // min Re F on Im z in (0, 5]
};

ValidationReport validate(const JostEval& F, std::span<const double> t_grid);

// Bound states: minima of |F|^2 on a uniform scan bracketed and refined by
// golden section until |F| < 1e-10.  scan_step <= 0 picks (hi-lo)/4096.
std::vector<SpectralLine> find_real_zeros(const JostEval& F, double t_lo, double t_hi,
                                          double scan_step = 0.0);

// Finite-box eigencondition residual F(E) + F(-E) N^{iE}.
cplx finite_n_residual(const JostEval& F, double n_box, double energy);

// arg[F(E)/F(-E)] in (-pi, pi].  Throws when |F(E)| <= 1e-12 (at a zero the
// phase is undefined).
double phase_shift(const JostEval& F, double energy);

}  // namespace xpz
