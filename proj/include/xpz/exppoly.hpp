#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "xpz/rational.hpp"

namespace xpz {

using cplx = std::complex<double>;

// Finite generalized Dirichlet polynomial  p(t) = sum_k c_k q_k^{it}
// with exact positive rational frequencies q_k.  Terms are kept sorted by
// frequency, frequencies are unique and zero coefficients are not stored.
//
// The q = 1 term is the constant; p(0) = sum of all coefficients.
// Reality in the sense a*(t) = a(-t) holds exactly when every coefficient
// is real.
class ExpPoly {
 public:
  struct Term {
    Rational freq;
    cplx coeff;
  };

  ExpPoly() = default;
  ExpPoly(std::initializer_list<Term> terms) {
    for (const auto& t : terms) add_term(t.freq, t.coeff);
  }

  static ExpPoly zero() { return ExpPoly(); }
  static ExpPoly constant(cplx c) { return monomial(Rational(1), c); }
  static ExpPoly monomial(const Rational& q, cplx c) {
    ExpPoly p;
    p.add_term(q, c);
    return p;
  }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Accumulates c onto the coefficient at q; erases the term if it becomes 0.
  void add_term(const Rational& q, cplx c);

  cplx coeff(const Rational& q) const;

  // Value at t = 0, i.e. the sum of all coefficients.
  cplx coeff_sum() const;

  double l1_norm() const;

  bool has_real_coeffs(double tol = 0.0) const;
  bool vanishes_at_zero(double tol = 1e-12) const;

  // p(z) = sum c_k exp(i z log q_k); entire in z.  Values with Im z < 0 are
  // the formal continuation below the axis.
  cplx eval(cplx z) const;
  cplx eval(double t) const { return eval(cplx(t, 0.0)); }

  // dp/dz at z.
  cplx eval_derivative(cplx z) const;

  ExpPoly& operator+=(const ExpPoly& other);
  ExpPoly& operator-=(const ExpPoly& other);
  ExpPoly& operator*=(cplx scale);

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, cplx s) { return a *= s; }
  friend ExpPoly operator*(cplx s, ExpPoly a) { return a *= s; }

  // q -> 1/q with conjugated coefficients; represents conj(p(t)) on the
  // real axis.
  ExpPoly reflect() const;

  // Drops |coeff| < coeff_floor and freq > max_frequency.  The only lossy
  // operation in the algebra; everything else is exact over its terms.
  ExpPoly pruned(double coeff_floor, const Rational& max_frequency) const;

  bool operator==(const ExpPoly& other) const;

  // Largest coefficient-wise difference against other (absolute).
  double max_coeff_distance(const ExpPoly& other) const;

 private:
  friend class ExpPolyBuilder;
  std::vector<Term> terms_;  // sorted by freq, unique, no zero coeffs
};

// Pointwise product: every frequency pair contributes q1*q2 with weight 1.
// Distinct from the star product, which projects onto the upper half-plane.
ExpPoly mul(const ExpPoly& a, const ExpPoly& b);

// Bulk construction without per-term binary search; sorts and merges once.
class ExpPolyBuilder {
 public:
  void reserve(std::size_t n) { terms_.reserve(n); }
  void push(Rational q, cplx c) { terms_.push_back({std::move(q), c}); }
  ExpPoly build();

 private:
  std::vector<ExpPoly::Term> terms_;
};

// Parallel grid evaluation; result[i] = p(grid[i]) with bit-deterministic
// output regardless of thread count.
std::vector<cplx> eval_grid(const ExpPoly& p, std::span<const double> grid);

// Uniform grid helper: n points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace xpz
