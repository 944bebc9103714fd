#pragma once

#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "xpz/exppoly.hpp"
#include "xpz/rational.hpp"

namespace xpz {

// Euler-Maclaurin evaluation parameters.  The defaults hold 1e-12 relative
// accuracy for |Im s| <= 100, Re s >= 0.4.
struct ZetaConfig {
  int cutoff = 50;           // direct-sum terms
  int bernoulli_order = 12;  // correction terms (<= 14)
};

// Riemann zeta at complex s != 1.
cplx zeta(cplx s, const ZetaConfig& cfg = {});

// Principal branch of log Gamma (Lanczos, recurrence shift for Re z < 1/2).
cplx log_gamma(cplx z);

// Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi.  Odd in t.
double rs_theta(double t);

// Riemann-Siegel Z: Re[e^{i theta(t)} zeta(1/2 + it)]; even in t.  Throws if
// the discarded imaginary part exceeds 1e-9.
double rs_z(double t);

// Exact Catalan number C_n.
bigint catalan(unsigned n);

// Real boundary potential a(x) on [1, inf).
struct StepPotential {
  double a1;
  Rational x1;  // > 1
};
struct SmoothSinePotential {};  // a(x) = -2 sin(2 pi x) / sqrt(x)
struct TabulatedPotential {
  std::vector<std::pair<double, double>> samples;  // strictly increasing x from 1
};

class PotentialSpec {
 public:
  using Variant = std::variant<StepPotential, SmoothSinePotential, TabulatedPotential>;

  static PotentialSpec step(double a1, Rational x1);
  static PotentialSpec smooth_sine();
  static PotentialSpec tabulated(std::vector<std::pair<double, double>> samples);

  const Variant& value() const { return v_; }
  bool is_step() const { return std::holds_alternative<StepPotential>(v_); }
  bool is_smooth_sine() const { return std::holds_alternative<SmoothSinePotential>(v_); }

  double operator()(double x) const;  // a(x); zero outside the defined range

 private:
  explicit PotentialSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Mellin transform  a^(t) = int_1^inf x^{-1+it} a(x) dx.
// Step: exact closed form.  SmoothSine: oscillatory quadrature on [1, X]
// plus contour-rotated tails, X = max(20, 4|t|), absolute error <= 1e-8.
// Tabulated: per-segment closed form of the linear interpolant.
// Satisfies the reality relation conj(a^(t)) = a^(-t).
cplx mellin(const PotentialSpec& potential, double t);

namespace detail {
// Principal branch of Lambert W on [-1/e, inf); used for asymptotic seeds.
double lambert_w0(double x);
}  // namespace detail

}  // namespace xpz
