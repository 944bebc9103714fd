#include "xpz/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "xpz/specfun.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xpz {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double counting(CountingVariant variant, double energy, std::optional<double> lambda,
                std::optional<double> l_x) {
  if (!(energy > 0.0)) throw std::invalid_argument("counting: requires E > 0");
  const double average = energy / kTwoPi * (std::log(energy / kTwoPi) - 1.0);
  switch (variant) {
    case CountingVariant::berry_keating:
      return average + 1.0;
    case CountingVariant::connes:
      if (!lambda) throw std::invalid_argument("counting: connes requires lambda");
      return energy / kPi * std::log(*lambda) - average;
    case CountingVariant::box:
      if (!lambda || !l_x) throw std::invalid_argument("counting: box requires lambda and l_x");
      return energy / kTwoPi * std::log(*lambda / *l_x);
  }
  throw std::invalid_argument("counting: unknown variant");
}

std::vector<SpectralLine> xp_eigenvalues(const ModelParams& params, int n_lo, int n_hi) {
  if (!(params.n_box > 1.0)) throw std::invalid_argument("xp_eigenvalues: requires N > 1");
  if (n_lo > n_hi) throw std::invalid_argument("xp_eigenvalues: requires n_lo <= n_hi");
  const double log_n = std::log(params.n_box);
  const std::complex<double> phase_target = std::polar(1.0, params.alpha);
  std::vector<SpectralLine> lines;
  lines.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    const double e = kTwoPi / log_n * (n + params.alpha / kTwoPi);
    const double residual = std::abs(std::polar(1.0, e * log_n) - phase_target);
    lines.push_back({e, StateKind::delocalized, residual});
  }
  return lines;
}

std::vector<RdRoot> rd_solve(const RDParams& params, double window_lo, double window_hi) {
  if (params.h == 0.0) throw std::invalid_argument("rd_solve: requires h != 0");
  if (!(params.n_band > 1.0)) throw std::invalid_argument("rd_solve: requires N > 1");
  if (!(window_lo < window_hi)) throw std::invalid_argument("rd_solve: empty window");
  const double n_band = params.n_band;
  constexpr double kMargin = 1e-9;
  if (window_hi > 1.0 - kMargin && window_lo < n_band + kMargin) {
    throw std::invalid_argument("rd_solve: window must exclude the band [1, N]");
  }

  // Phase form: h log((N-E)/(1-E)) = phi0 + 2 pi k.  On each side of the
  // band the log is real and strictly increasing in E, so every admitted
  // branch inverts in closed form.
  const double phi0 = 2.0 * std::atan2(params.h, params.g);
  auto phase_log = [&](double e) { return std::log((n_band - e) / (1.0 - e)); };
  auto energy_of = [&](double ell) { return (std::exp(ell) - n_band) / (std::exp(ell) - 1.0); };

  const double ell_lo = phase_log(window_lo);
  const double ell_hi = phase_log(window_hi);
  const double u_min = std::min(params.h * ell_lo, params.h * ell_hi);
  const double u_max = std::max(params.h * ell_lo, params.h * ell_hi);

  std::vector<RdRoot> roots;
  const long k_min = static_cast<long>(std::ceil((u_min - phi0) / kTwoPi - 1e-12));
  const long k_max = static_cast<long>(std::floor((u_max - phi0) / kTwoPi + 1e-12));
  for (long k = k_min; k <= k_max; ++k) {
    const double ell = (phi0 + kTwoPi * static_cast<double>(k)) / params.h;
    if (ell == 0.0) continue;  // no finite inverse
    const double e = energy_of(ell);
    if (e >= window_lo && e <= window_hi) roots.push_back({e, k});
  }
  std::sort(roots.begin(), roots.end(),
            [](const RdRoot& a, const RdRoot& b) { return a.energy < b.energy; });
  return roots;
}

double smooth_zero(int n) {
  if (n < 1) throw std::invalid_argument("smooth_zero: requires n >= 1");
  const double target = (n - 0.5) * kPi;
  // Inverted asymptotic theta(E) ~ (E/2) log(E/(2 pi e)) - pi/8 via Lambert W.
  const double y = n - 0.375;
  double e = kTwoPi * y / detail::lambert_w0(y / M_E);
  e = std::max(e, 8.0);
  for (int it = 0; it < 100; ++it) {
    const double f = rs_theta(e) - target;
    if (std::abs(f) < 5e-11) return e;
    const double slope = std::max(0.05, 0.5 * std::log(e / kTwoPi));
    e = std::max(8.0, e - f / slope);
  }
  throw std::runtime_error("smooth_zero: Newton iteration did not converge");
}

ZScanResult zscan_true_zeros(double t_lo, double t_hi, double step) {
  if (!(t_lo >= 0.0) || !(t_lo < t_hi)) {
    throw std::invalid_argument("zscan_true_zeros: requires 0 <= t_lo < t_hi");
  }
  if (!(step > 0.0)) throw std::invalid_argument("zscan_true_zeros: requires step > 0");

  const auto npts = static_cast<std::size_t>(std::floor((t_hi - t_lo) / step)) + 1;
  std::vector<double> z(npts);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(npts); ++i) {
    z[static_cast<std::size_t>(i)] = rs_z(t_lo + step * static_cast<double>(i));
  }

  ZScanResult result;
  for (std::size_t i = 1; i < npts; ++i) {
    if (z[i - 1] == 0.0) {
      result.zeros.push_back(t_lo + step * static_cast<double>(i - 1));
      continue;
    }
    if (z[i - 1] * z[i] < 0.0) {
      double a = t_lo + step * static_cast<double>(i - 1);
      double b = a + step;
      double fa = z[i - 1];
      while (b - a > 1e-8) {
        const double mid = 0.5 * (a + b);
        const double fm = rs_z(mid);
        if (fa * fm <= 0.0) {
          b = mid;
        } else {
          a = mid;
          fa = fm;
        }
      }
      result.zeros.push_back(0.5 * (a + b));
    }
  }

  // Gram-law heuristic: mean gap 2 pi / log(t / 2 pi) near the top of the
  // window, plus any observed near-coincident pair.
  const double mean_gap = kTwoPi / std::log(std::max(t_hi, 10.0) / kTwoPi);
  if (2.0 * step > 0.5 * mean_gap) result.step_warning = true;
  for (std::size_t i = 1; i < result.zeros.size(); ++i) {
    if (result.zeros[i] - result.zeros[i - 1] < 2.0 * step) result.step_warning = true;
  }
  return result;
}

}  // namespace xpz
