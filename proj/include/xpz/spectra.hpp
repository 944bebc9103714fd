#pragma once

#include <optional>
#include <vector>

#include "xpz/spectral_line.hpp"

namespace xpz {

enum class CountingVariant { berry_keating, connes, box };

// Semiclassical counting functions N(E).  connes and box need the cutoff
// lambda; box additionally needs l_x.
double counting(CountingVariant variant, double energy, std::optional<double> lambda = {},
                std::optional<double> l_x = {});

// Finite box N = Lambda/l_x (l_x normalized to 1) and self-adjoint
// extension angle alpha in [0, 2 pi).
struct ModelParams {
  double n_box;
  double alpha;
};

// E_n = (2 pi / log N)(n + alpha / 2 pi) for n in [n_lo, n_hi]; residual is
// the boundary-phase defect |N^{iE} - e^{i alpha}|.
std::vector<SpectralLine> xp_eigenvalues(const ModelParams& params, int n_lo, int n_hi);

// One-body Russian Doll couplings: BCS g, time-reversal-breaking h != 0,
// band edge N > 1.
struct RDParams {
  double g;
  double h;
  double n_band;
};

struct RdRoot {
  double energy;
  long branch;  // phase-branch index k of h log((N-E)/(1-E)) = phi0 + 2 pi k
};

// Roots of ((N-E)/(1-E))^{ih} = (g+ih)/(g-ih) in the window, which must
// exclude the band [1, N].  Solved on the logarithm of the eigencondition;
// each branch inverts in closed form.
std::vector<RdRoot> rd_solve(const RDParams& params, double window_lo, double window_hi);

// n-th smooth zero: the solution of theta(E) = (n - 1/2) pi, by Newton with
// the asymptotic slope, seeded from the inverted asymptotic.
double smooth_zero(int n);

struct ZScanResult {
  std::vector<double> zeros;
  bool step_warning = false;  // scan step may be too coarse for the local gap
};

// Sign-change scan of Z(t) on [t_lo, t_hi], each zero bisected to 1e-8.
ZScanResult zscan_true_zeros(double t_lo, double t_hi, double step);

}  // namespace xpz
