#include "xpz/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xpz {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846264338328;

// B_{2j}/(2j)! for j = 0..14.
constexpr double kBernFact[15] = {
    1.00000000000000000000000000000,   0.083333333333333333333333333333,
    -0.00138888888888888888888888889,  0.000033068783068783068783068783,
    -8.2671957671957671957671957672e-07, 2.0876756987868098979210090321e-08,
    -5.2841901386874931848476822022e-10, 1.3382536530684678832826980975e-11,
    -3.3896802963225828668301953912e-13, 8.5860620562778445641359054504e-15,
    -2.1748686985580618730415164239e-16, 5.5090028283602295152026526089e-18,
    -1.3954464685812523340707686264e-19, 3.5347070396294674716932299778e-21,
    -8.9535174270375468504026113181e-23};

}  // namespace

cplx zeta(cplx s, const ZetaConfig& cfg) {
  if (s == cplx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  const int n_cut = std::max(2, cfg.cutoff);
  const int order = std::clamp(cfg.bernoulli_order, 1, 14);

  cplx sum{0.0, 0.0};
  for (int n = 1; n <= n_cut; ++n) {
    sum += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double logN = std::log(static_cast<double>(n_cut));
  const cplx n_pow_ms = std::exp(-s * logN);  // N^{-s}
  const double N = static_cast<double>(n_cut);

  cplx acc = sum + n_pow_ms * N / (s - 1.0) - 0.5 * n_pow_ms;

  // Correction k uses B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
  cplx rising = s;                      // s(s+1)...(s+2k-2), k = 1 start
  cplx npow = n_pow_ms / N;             // N^{-s-2k+1}, k = 1 start
  const double inv_n2 = 1.0 / (N * N);
  for (int k = 1; k <= order; ++k) {
    acc += kBernFact[k] * rising * npow;
    rising *= (s + cplx(2.0 * k - 1.0, 0.0)) * (s + cplx(2.0 * k, 0.0));
    npow *= inv_n2;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// log Gamma
// ---------------------------------------------------------------------------

namespace {

// Lanczos coefficients, g = 671/128.
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kLanczosC[14] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};
constexpr double kLanczosG = 5.24218750000000000;  // 671/128
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Valid for Re z >= 1/2.
cplx log_gamma_core(cplx z) {
  cplx series{kLanczosC0, 0.0};
  for (int j = 0; j < 14; ++j) {
    series += kLanczosC[j] / (z + cplx(static_cast<double>(j + 1), 0.0));
  }
  const cplx tmp = z + cplx(kLanczosG, 0.0);
  return (z + 0.5) * std::log(tmp) - tmp + std::log(kSqrt2Pi * series / z);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    throw std::domain_error("log_gamma: pole at non-positive integer");
  }
  // Recurrence shift into Re z >= 1/2: log G(z) = log G(z+n) - sum log(z+k).
  cplx shift{0.0, 0.0};
  while (z.real() < 0.5) {
    shift += std::log(z);
    z += 1.0;
  }
  return log_gamma_core(z) - shift;
}

double rs_theta(double t) {
  if (!std::isfinite(t)) throw std::domain_error("rs_theta: non-finite argument");
  if (t == 0.0) return 0.0;
  const cplx lg = log_gamma(cplx(0.25, 0.5 * t));
  return lg.imag() - 0.5 * t * std::log(kPi);
}

double rs_z(double t) {
  const double theta = rs_theta(t);
  const cplx v = std::polar(1.0, theta) * zeta(cplx(0.5, t));
  if (std::abs(v.imag()) > 1e-9) {
    throw std::runtime_error("rs_z: rotated zeta is not numerically real");
  }
  return v.real();
}

bigint catalan(unsigned n) {
  bigint c = 1;
  for (unsigned k = 0; k < n; ++k) {
    c *= 2 * (2 * k + 1);
    c /= k + 2;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Potentials and their Mellin transforms
// ---------------------------------------------------------------------------

PotentialSpec PotentialSpec::step(double a1, Rational x1) {
  if (!x1.greater_one()) throw std::invalid_argument("StepPotential: requires x1 > 1");
  return PotentialSpec(StepPotential{a1, std::move(x1)});
}

PotentialSpec PotentialSpec::smooth_sine() { return PotentialSpec(SmoothSinePotential{}); }

PotentialSpec PotentialSpec::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("TabulatedPotential: needs >= 2 samples");
  if (samples.front().first != 1.0) {
    throw std::invalid_argument("TabulatedPotential: grid must start at x = 1");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].first <= samples[i - 1].first) {
      throw std::invalid_argument("TabulatedPotential: x must be strictly increasing");
    }
  }
  return PotentialSpec(TabulatedPotential{std::move(samples)});
}

double PotentialSpec::operator()(double x) const {
  return std::visit(
      [x](const auto& pot) -> double {
        using T = std::decay_t<decltype(pot)>;
        if constexpr (std::is_same_v<T, StepPotential>) {
          return x < pot.x1.to_double() ? pot.a1 : 0.0;
        } else if constexpr (std::is_same_v<T, SmoothSinePotential>) {
          return -2.0 * std::sin(2.0 * kPi * x) / std::sqrt(x);
        } else {
          const auto& s = pot.samples;
          if (x < s.front().first || x > s.back().first) return 0.0;
          auto it = std::lower_bound(s.begin(), s.end(), x,
                                     [](const auto& p, double v) { return p.first < v; });
          if (it == s.begin()) return it->second;
          const auto [x1, a1] = *it;
          const auto [x0, a0] = *(it - 1);
          return a0 + (a1 - a0) * (x - x0) / (x1 - x0);
        }
      },
      v_);
}

namespace {

// int_{e^{L0}}^{e^{L1}} x^{-1+it} dx, stable for all t.
cplx int_x_it(double L0, double L1, double t) {
  const double d = L1 - L0;
  if (t == 0.0) return {d, 0.0};
  return std::polar(1.0, t * 0.5 * (L0 + L1)) * (2.0 * std::sin(0.5 * t * d) / t);
}

constexpr int kGlHalf = 8;
constexpr double kGlX[kGlHalf] = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr double kGlW[kGlHalf] = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
cplx gl_panel(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc{0.0, 0.0};
  for (int k = 0; k < kGlHalf; ++k) {
    acc += kGlW[k] * (f(mid - half * kGlX[k]) + f(mid + half * kGlX[k]));
  }
  return half * acc;
}

template <class F>
cplx gl_composite(F&& f, double a, double b, std::size_t panels) {
  std::vector<cplx> vals(panels);
  const double h = (b - a) / static_cast<double>(panels);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(panels); ++i) {
    const double lo = a + h * static_cast<double>(i);
    vals[static_cast<std::size_t>(i)] = gl_panel(f, lo, lo + h);
  }
  cplx acc{0.0, 0.0};
  for (const cplx& v : vals) acc += v;
  return acc;
}

cplx mellin_smooth_sine(double t) {
  const double X = std::max(20.0, 4.0 * std::abs(t));
  const cplx s{-1.5, t};

  // Oscillation rate is 2 pi from the sine plus |t|/x from x^{it}.
  const double h = std::min(0.25, 5.0 / (2.0 * kPi + std::abs(t)));
  const std::size_t panels = static_cast<std::size_t>(std::ceil((X - 1.0) / h));
  auto body = [&](double x) -> cplx {
    return std::exp(s * std::log(x)) * std::sin(2.0 * kPi * x);
  };
  const cplx head = gl_composite(body, 1.0, X, panels);

  // Tails of int_X^inf x^s e^{+-2 pi i x} dx rotated onto x = X +- iu;
  // the e^{-2 pi u} factor makes them rapidly convergent since X >= 4|t|.
  auto up = [&](double u) -> cplx {
    return std::exp(s * std::log(cplx(X, u)) - 2.0 * kPi * u);
  };
  auto down = [&](double u) -> cplx {
    return std::exp(s * std::log(cplx(X, -u)) - 2.0 * kPi * u);
  };
  const cplx i_up = kI * std::polar(1.0, 2.0 * kPi * X) * gl_composite(up, 0.0, 6.0, 24);
  const cplx i_dn = -kI * std::polar(1.0, -2.0 * kPi * X) * gl_composite(down, 0.0, 6.0, 24);
  const cplx tail = (i_up - i_dn) / (2.0 * kI);

  return -2.0 * (head + tail);
}

}  // namespace

cplx mellin(const PotentialSpec& potential, double t) {
  return std::visit(
      [t](const auto& pot) -> cplx {
        using T = std::decay_t<decltype(pot)>;
        if constexpr (std::is_same_v<T, StepPotential>) {
          return pot.a1 * int_x_it(0.0, pot.x1.log(), t);
        } else if constexpr (std::is_same_v<T, SmoothSinePotential>) {
          return mellin_smooth_sine(t);
        } else {
          // Exact Mellin transform of the piecewise-linear interpolant:
          // per segment, a(x) = (a0 - m x0) + m x.
          cplx acc{0.0, 0.0};
          const auto& s = pot.samples;
          const cplx one_it{1.0, t};
          for (std::size_t i = 1; i < s.size(); ++i) {
            const auto [x0, a0] = s[i - 1];
            const auto [x1, a1] = s[i];
            const double m = (a1 - a0) / (x1 - x0);
            acc += (a0 - m * x0) * int_x_it(std::log(x0), std::log(x1), t);
            acc += m * (std::exp(one_it * std::log(x1)) - std::exp(one_it * std::log(x0))) / one_it;
          }
          return acc;
        }
      },
      potential.value());
}

namespace detail {

double lambert_w0(double x) {
  if (x < -0.36787944117144233) throw std::domain_error("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;
  double w;
  if (x < 1.0) {
    w = x * (1.0 - x);  // series seed near 0
  } else if (x < 3.0) {
    w = 0.8 * std::log1p(x);
  } else {
    w = std::log(x) - std::log(std::log(x));
  }
  for (int it = 0; it < 64; ++it) {  // Halley
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step = f / (ew * (w + 1.0) - 0.5 * (w + 2.0) * f / (w + 1.0));
    w -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

}  // namespace detail

}  // namespace xpz
