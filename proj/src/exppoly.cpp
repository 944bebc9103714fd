#include "xpz/exppoly.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xpz {

namespace {

bool freq_less(const ExpPoly::Term& a, const ExpPoly::Term& b) { return a.freq < b.freq; }

}  // namespace

void ExpPoly::add_term(const Rational& q, cplx c) {
  if (c == cplx(0.0, 0.0)) return;
  Term probe{q, c};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, freq_less);
  if (it != terms_.end() && it->freq == q) {
    it->coeff += c;
    if (it->coeff == cplx(0.0, 0.0)) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(probe));
  }
}

cplx ExpPoly::coeff(const Rational& q) const {
  Term probe{q, {}};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, freq_less);
  if (it != terms_.end() && it->freq == q) return it->coeff;
  return {0.0, 0.0};
}

cplx ExpPoly::coeff_sum() const {
  cplx s{0.0, 0.0};
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

double ExpPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

bool ExpPoly::has_real_coeffs(double tol) const {
  for (const auto& t : terms_) {
    if (std::abs(t.coeff.imag()) > tol) return false;
  }
  return true;
}

bool ExpPoly::vanishes_at_zero(double tol) const { return std::abs(coeff_sum()) <= tol; }

cplx ExpPoly::eval(cplx z) const {
  cplx acc{0.0, 0.0};
  const cplx iz = cplx(0.0, 1.0) * z;
  for (const auto& t : terms_) {
    acc += t.coeff * std::exp(iz * t.freq.log());
  }
  return acc;
}

cplx ExpPoly::eval_derivative(cplx z) const {
  cplx acc{0.0, 0.0};
  const cplx iz = cplx(0.0, 1.0) * z;
  for (const auto& t : terms_) {
    const double lq = t.freq.log();
    acc += t.coeff * cplx(0.0, lq) * std::exp(iz * lq);
  }
  return acc;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& other) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (a->freq == b->freq) {
      cplx c = a->coeff + b->coeff;
      if (c != cplx(0.0, 0.0)) merged.push_back({a->freq, c});
      ++a;
      ++b;
    } else if (a->freq < b->freq) {
      merged.push_back(*a++);
    } else {
      merged.push_back(*b++);
    }
  }
  merged.insert(merged.end(), a, terms_.end());
  merged.insert(merged.end(), b, other.terms_.end());
  terms_ = std::move(merged);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& other) {
  ExpPoly neg = other;
  neg *= cplx(-1.0, 0.0);
  return *this += neg;
}

ExpPoly& ExpPoly::operator*=(cplx scale) {
  if (scale == cplx(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

ExpPoly ExpPoly::reflect() const {
  ExpPolyBuilder b;
  b.reserve(terms_.size());
  for (const auto& t : terms_) b.push(t.freq.reciprocal(), std::conj(t.coeff));
  return b.build();
}

ExpPoly ExpPoly::pruned(double coeff_floor, const Rational& max_frequency) const {
  ExpPoly out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (std::abs(t.coeff) < coeff_floor) continue;
    if (t.freq > max_frequency) continue;
    out.terms_.push_back(t);
  }
  return out;
}

bool ExpPoly::operator==(const ExpPoly& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].freq != other.terms_[i].freq) return false;
    if (terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

double ExpPoly::max_coeff_distance(const ExpPoly& other) const {
  double worst = 0.0;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->freq < b->freq)) {
      worst = std::max(worst, std::abs(a->coeff));
      ++a;
    } else if (a == terms_.end() || b->freq < a->freq) {
      worst = std::max(worst, std::abs(b->coeff));
      ++b;
    } else {
      worst = std::max(worst, std::abs(a->coeff - b->coeff));
      ++a;
      ++b;
    }
  }
  return worst;
}

ExpPoly mul(const ExpPoly& a, const ExpPoly& b) {
  ExpPolyBuilder out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out.push(ta.freq * tb.freq, ta.coeff * tb.coeff);
    }
  }
  return out.build();
}

ExpPoly ExpPolyBuilder::build() {
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const ExpPoly::Term& a, const ExpPoly::Term& b) { return a.freq < b.freq; });
  ExpPoly p;
  p.terms_.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!p.terms_.empty() && p.terms_.back().freq == t.freq) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == cplx(0.0, 0.0)) p.terms_.pop_back();
    } else {
      if (t.coeff != cplx(0.0, 0.0)) p.terms_.push_back(std::move(t));
    }
  }
  terms_.clear();
  return p;
}

std::vector<cplx> eval_grid(const ExpPoly& p, std::span<const double> grid) {
  // Frequency logs are hoisted out of the grid loop; they dominate eval()
  // cost for large polynomials.
  const std::size_t nt = p.size();
  std::vector<double> logq(nt);
  std::vector<cplx> coef(nt);
  {
    std::size_t k = 0;
    for (const auto& t : p.terms()) {
      logq[k] = t.freq.log();
      coef[k] = t.coeff;
      ++k;
    }
  }
  std::vector<cplx> out(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double t = grid[static_cast<std::size_t>(i)];
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < nt; ++k) {
      acc += coef[k] * std::polar(1.0, t * logq[k]);
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * static_cast<double>(i);
  return g;
}

}  // namespace xpz
