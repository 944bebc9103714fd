#pragma once

#include <vector>

#include "xpz/jost.hpp"
#include "xpz/specfun.hpp"
#include "xpz/spectral_line.hpp"

namespace xpz {

// Log-uniform grid in q = log x over [0, log N]: midpoints q_j = (j+1/2) h,
// h = log(N)/M.  The q-space weights are uniform and sum to log N; the
// x-measure weight of a node is x_j h.
struct GridSpec {
  double n_box;  // N > 1
  int m_points;  // M >= 2

  double log_n() const;
  double spacing() const;
  double q(int j) const;
  double x(int j) const;
  double weight(int j) const;  // q-space weight

  void validate() const;
};

enum class KernelKind { free_kernel, interacting };

// Symmetrized discretization of the inverse Hamiltonian: purely i times a
// real antisymmetric matrix, so the spectrum comes in +-E pairs.
struct KernelMatrix {
  GridSpec grid;
  KernelKind kind;
  std::vector<cplx> entries;  // column-major M x M

  cplx at(int j, int k) const { return entries[static_cast<std::size_t>(k) * grid.m_points + j]; }
};

// Kernel value of the integral operator at (x, x'): (i/2) [sign(x - x') +
// a(x) b(x') - a(x') b(x)] / sqrt(x x'), with b = 1 when only a is given.
cplx kernel_value(double x, double xp, const PotentialSpec* a, const PotentialSpec* b);

// Quadrature matrix entry(j,k) = sqrt(v_j v_k) kernel(x_j, x_k) with the
// x-measure weights v_j = x_j h; diag is exactly 0 (sign(0) = 0).  Omitting
// a yields the free kernel; omitting only b sets b = 1 (type I).
KernelMatrix build_matrix(const GridSpec& grid, const PotentialSpec* a = nullptr,
                          const PotentialSpec* b = nullptr);

namespace ref {
// Plain double-loop matrix build; reference for the OpenMP version.
KernelMatrix build_matrix(const GridSpec& grid, const PotentialSpec* a = nullptr,
                          const PotentialSpec* b = nullptr);
}  // namespace ref

struct EigenPair {
  double mu;      // eigenvalue of the discretized H^{-1}
  double energy;  // 1/mu when |mu| >= 1e-12
  bool energy_valid;
  std::vector<cplx> vector;  // symmetrized components u_j = sqrt(v_j) psi(x_j)
};

// Full Hermitian spectrum, eigenvalues ascending, LAPACK zheevd behind the
// spec contract.  Vectors are orthonormal; skip them when only energies are
// needed.
std::vector<EigenPair> eigensolve(const KernelMatrix& matrix, bool want_vectors = true);

struct StateClassification {
  SpectralLine line;  // residual carries the tail amplitude ratio
  double tail_ratio;  // max |psi sqrt(x)| beyond the edge over the peak
  double ipr;         // inverse participation ratio of |u|^2
};

// Tail-amplitude classification: localized when the |psi(x)| sqrt(x)
// estimator beyond x_localization_edge stays below threshold times the
// vector's peak.
std::vector<StateClassification> classify_states(const std::vector<EigenPair>& pairs,
                                                 const GridSpec& grid,
                                                 double x_localization_edge,
                                                 double threshold = 0.05);

struct EigenconditionReport {
  double delocalized_max = 0.0;
  double delocalized_mean = 0.0;
  double localized_max = 0.0;
  double localized_mean = 0.0;
  int delocalized_count = 0;
  int localized_count = 0;
};

// Residuals of the analytic eigencondition at the matrix energies:
// |F(E) + F(-E) N^{iE}| for delocalized states, |F(E)| for localized ones.
EigenconditionReport compare_eigencondition(const std::vector<StateClassification>& states,
                                            const JostEval& F, double n_box);

}  // namespace xpz
