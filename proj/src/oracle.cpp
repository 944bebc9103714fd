#include "xpz/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xpz {

double GridSpec::log_n() const { return std::log(n_box); }
double GridSpec::spacing() const { return log_n() / m_points; }
double GridSpec::q(int j) const { return (j + 0.5) * spacing(); }
double GridSpec::x(int j) const { return std::exp(q(j)); }
double GridSpec::weight(int j) const {
  (void)j;
  return spacing();
}

void GridSpec::validate() const {
  if (!(n_box > 1.0)) throw std::invalid_argument("GridSpec: requires N > 1");
  if (m_points < 2) throw std::invalid_argument("GridSpec: requires M >= 2");
}

cplx kernel_value(double x, double xp, const PotentialSpec* a, const PotentialSpec* b) {
  double interaction = 0.0;
  if (a) {
    const double ax = (*a)(x);
    const double axp = (*a)(xp);
    const double bx = b ? (*b)(x) : 1.0;
    const double bxp = b ? (*b)(xp) : 1.0;
    interaction = ax * bxp - axp * bx;
  }
  const double sign = x > xp ? 1.0 : (x < xp ? -1.0 : 0.0);
  return cplx(0.0, 0.5) * (sign + interaction) / std::sqrt(x * xp);
}

namespace {

// entry(j,k) = sqrt(x_j h x_k h) kernel(x_j, x_k)
//            = (i/2) h [sign(j-k) + a_j b_k - a_k b_j].
void fill_column(std::vector<cplx>& entries, const GridSpec& grid,
                 const std::vector<double>& av, const std::vector<double>& bv, bool interacting,
                 int k) {
  const int m = grid.m_points;
  const double h = grid.spacing();
  for (int j = 0; j < m; ++j) {
    double val = j > k ? 1.0 : (j < k ? -1.0 : 0.0);
    if (interacting) val += av[j] * bv[k] - av[k] * bv[j];
    entries[static_cast<std::size_t>(k) * m + j] = cplx(0.0, 0.5 * h * val);
  }
}

KernelMatrix build_matrix_impl(const GridSpec& grid, const PotentialSpec* a,
                               const PotentialSpec* b, bool parallel) {
  grid.validate();
  const int m = grid.m_points;
  const bool interacting = a != nullptr;

  std::vector<double> av(interacting ? m : 0), bv(interacting ? m : 0);
  if (interacting) {
    for (int j = 0; j < m; ++j) {
      const double xj = grid.x(j);
      av[j] = (*a)(xj);
      bv[j] = b ? (*b)(xj) : 1.0;
      if (!std::isfinite(av[j]) || !std::isfinite(bv[j])) {
        throw std::invalid_argument("build_matrix: potential undefined on the grid");
      }
    }
  }

  KernelMatrix out{grid, interacting ? KernelKind::interacting : KernelKind::free_kernel, {}};
  out.entries.resize(static_cast<std::size_t>(m) * m);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < m; ++k) fill_column(out.entries, grid, av, bv, interacting, k);
  } else {
    for (int k = 0; k < m; ++k) fill_column(out.entries, grid, av, bv, interacting, k);
  }
  return out;
}

}  // namespace

KernelMatrix build_matrix(const GridSpec& grid, const PotentialSpec* a, const PotentialSpec* b) {
  return build_matrix_impl(grid, a, b, true);
}

namespace ref {
KernelMatrix build_matrix(const GridSpec& grid, const PotentialSpec* a, const PotentialSpec* b) {
  return build_matrix_impl(grid, a, b, false);
}
}  // namespace ref

std::vector<EigenPair> eigensolve(const KernelMatrix& matrix, bool want_vectors) {
  const int m = matrix.grid.m_points;
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j <= k; ++j) {
      if (std::abs(matrix.at(j, k) - std::conj(matrix.at(k, j))) > 1e-14) {
        throw std::invalid_argument("eigensolve: matrix is not Hermitian");
      }
    }
  }

  std::vector<cplx> work = matrix.entries;
  std::vector<double> eigenvalues(static_cast<std::size_t>(m));
  const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', m,
                                  reinterpret_cast<lapack_complex_double*>(work.data()), m,
                                  eigenvalues.data());
  if (info != 0) throw std::runtime_error("eigensolve: LAPACK zheevd failed");

  std::vector<EigenPair> pairs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    EigenPair& p = pairs[static_cast<std::size_t>(i)];
    p.mu = eigenvalues[static_cast<std::size_t>(i)];
    p.energy_valid = std::abs(p.mu) >= 1e-12;
    p.energy = p.energy_valid ? 1.0 / p.mu : 0.0;
    if (want_vectors) {
      const cplx* col = work.data() + static_cast<std::size_t>(i) * m;
      p.vector.assign(col, col + m);
    }
  }
  return pairs;
}

std::vector<StateClassification> classify_states(const std::vector<EigenPair>& pairs,
                                                 const GridSpec& grid, double x_localization_edge,
                                                 double threshold) {
  if (!(x_localization_edge > 1.0) || !(x_localization_edge < grid.n_box)) {
    throw std::invalid_argument("classify_states: edge must lie inside (1, N)");
  }
  const int m = grid.m_points;
  int edge_index = m;
  for (int j = 0; j < m; ++j) {
    if (grid.x(j) > x_localization_edge) {
      edge_index = j;
      break;
    }
  }

  std::vector<StateClassification> out;
  out.reserve(pairs.size());
  for (const EigenPair& p : pairs) {
    if (!p.energy_valid || p.vector.empty()) continue;
    // |psi(x)| sqrt(x) is |u_j| / sqrt(h) on this grid; the uniform factor
    // cancels from the tail/peak ratio.
    double peak = 0.0;
    double tail = 0.0;
    double sum2 = 0.0;
    double sum4 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double amp = std::abs(p.vector[static_cast<std::size_t>(j)]);
      peak = std::max(peak, amp);
      if (j >= edge_index) tail = std::max(tail, amp);
      sum2 += amp * amp;
      sum4 += amp * amp * amp * amp;
    }
    const double ratio = peak > 0.0 ? tail / peak : 0.0;
    const bool localized = ratio < threshold;
    out.push_back({{p.energy, localized ? StateKind::localized : StateKind::delocalized, ratio},
                   ratio,
                   sum4 / (sum2 * sum2)});
  }
  std::sort(out.begin(), out.end(), [](const StateClassification& a,
                                       const StateClassification& b) {
    return a.line.energy < b.line.energy;
  });
  return out;
}

EigenconditionReport compare_eigencondition(const std::vector<StateClassification>& states,
                                            const JostEval& F, double n_box) {
  EigenconditionReport rep;
  const double log_n = std::log(n_box);
  for (const auto& s : states) {
    const double e = s.line.energy;
    if (s.line.kind == StateKind::localized) {
      const double r = std::abs(F(e));
      rep.localized_max = std::max(rep.localized_max, r);
      rep.localized_mean += r;
      ++rep.localized_count;
    } else {
      const double r = std::abs(F(e) + F(-e) * std::polar(1.0, e * log_n));
      rep.delocalized_max = std::max(rep.delocalized_max, r);
      rep.delocalized_mean += r;
      ++rep.delocalized_count;
    }
  }
  if (rep.localized_count > 0) rep.localized_mean /= rep.localized_count;
  if (rep.delocalized_count > 0) rep.delocalized_mean /= rep.delocalized_count;
  return rep;
}

}  // namespace xpz
