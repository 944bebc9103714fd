#include "xpz/dirichlet.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xpz {

namespace {

constexpr cplx kI{0.0, 1.0};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = std::countr_zero(a | b);
  a >>= std::countr_zero(a);
  do {
    b >>= std::countr_zero(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

std::uint64_t mix_hash(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Open-addressed accumulator keyed by packed (num << 32 | den) ratios.
// Keys are never 0 (num >= 1), so 0 marks an empty slot.
class RatioAccumulator {
 public:
  struct Entry {
    std::uint64_t key;
    cplx sum;
  };

  explicit RatioAccumulator(std::size_t expect) {
    std::size_t cap = 64;
    while (cap < expect * 2) cap <<= 1;
    keys_.assign(cap, 0);
    index_.assign(cap, 0);
    mask_ = cap - 1;
  }

  void add(std::uint64_t key, cplx v) {
    std::size_t slot = mix_hash(key) & mask_;
    while (true) {
      if (keys_[slot] == 0) {
        keys_[slot] = key;
        index_[slot] = static_cast<std::uint32_t>(entries_.size());
        entries_.push_back({key, v});
        if (entries_.size() * 2 > keys_.size()) grow();
        return;
      }
      if (keys_[slot] == key) {
        entries_[index_[slot]].sum += v;
        return;
      }
      slot = (slot + 1) & mask_;
    }
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<Entry> take_entries() { return std::move(entries_); }

 private:
  void grow() {
    const std::size_t cap = keys_.size() * 2;
    keys_.assign(cap, 0);
    index_.assign(cap, 0);
    mask_ = cap - 1;
    for (std::uint32_t i = 0; i < entries_.size(); ++i) {
      std::size_t slot = mix_hash(entries_[i].key) & mask_;
      while (keys_[slot] != 0) slot = (slot + 1) & mask_;
      keys_[slot] = entries_[i].key;
      index_[slot] = i;
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> index_;
  std::vector<Entry> entries_;
  std::uint64_t mask_ = 0;
};

struct FastTerm {
  std::uint64_t num;
  std::uint64_t den;
  cplx coeff;
};

// The packed fast path needs every cross ratio to reduce below 2^32 on both
// sides; bounding max(num_f)*max(den_g) and max(den_f)*max(num_g) is enough
// since reduction only shrinks them.
bool fast_eligible(const ExpPoly& f, const ExpPoly& g) {
  bigint fn = 1, fd = 1, gn = 1, gd = 1;
  for (const auto& t : f.terms()) {
    if (!t.freq.fits_u32()) return false;
    fn = std::max(fn, t.freq.num());
    fd = std::max(fd, t.freq.den());
  }
  for (const auto& t : g.terms()) {
    if (!t.freq.fits_u32()) return false;
    gn = std::max(gn, t.freq.num());
    gd = std::max(gd, t.freq.den());
  }
  const bigint limit = bigint(1) << 32;
  return fn * gd < limit && fd * gn < limit;
}

std::vector<FastTerm> fast_terms(const ExpPoly& p) {
  std::vector<FastTerm> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.freq.num_u64(), t.freq.den_u64(), t.coeff});
  return out;
}

// Reduced ratio (n1/d1)/(n2/d2) packed as num<<32|den.  Inputs are reduced,
// so gcd(n1*d2, d1*n2) = gcd(n1,n2) * gcd(d1,d2); fast_eligible guarantees
// both halves fit 32 bits.
std::uint64_t ratio_key(const FastTerm& a, const FastTerm& b) {
  const std::uint64_t g1 = gcd_u64(a.num, b.num);
  const std::uint64_t g2 = gcd_u64(a.den, b.den);
  const std::uint64_t num = (a.num / g1) * (b.den / g2);
  const std::uint64_t den = (a.den / g2) * (b.num / g1);
  return (num << 32) | den;
}

ExpPoly entries_to_poly(const std::vector<RatioAccumulator::Entry>& entries) {
  ExpPolyBuilder b;
  b.reserve(entries.size());
  for (const auto& e : entries) {
    b.push(Rational(bigint(e.key >> 32), bigint(e.key & 0xFFFFFFFFull)), e.sum);
  }
  return b.build();
}

// Shared driver: chunk the rows of f, accumulate each chunk independently,
// then fold the chunk results in chunk order so the per-frequency addition
// sequence is independent of the thread count.  The chunk count depends only
// on the input size, never on the thread count.
template <class ChunkFn>
ExpPoly chunked_star(std::size_t rows, std::size_t cols, ChunkFn&& run_chunk) {
  const std::size_t nchunks = std::clamp<std::size_t>(rows / 64, 1, 16);
  const std::size_t chunk_rows = (rows + nchunks - 1) / nchunks;
  std::vector<std::vector<RatioAccumulator::Entry>> partial(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * chunk_rows;
    const std::size_t hi = std::min(rows, lo + chunk_rows);
    RatioAccumulator acc(std::min(cols * (hi - lo), std::size_t{1} << 16));
    if (lo < hi) run_chunk(lo, hi, acc);
    partial[static_cast<std::size_t>(c)] = acc.take_entries();
  }
  RatioAccumulator total(1 << 12);
  for (const auto& chunk : partial) {
    for (const auto& e : chunk) total.add(e.key, e.sum);
  }
  return entries_to_poly(total.entries());
}

}  // namespace

namespace ref {

ExpPoly star_product(const ExpPoly& f, const ExpPoly& g) {
  std::map<Rational, cplx> acc;
  for (const auto& tf : f.terms()) {
    for (const auto& tg : g.terms()) {
      Rational q = tf.freq / tg.freq;
      if (q.less_one()) continue;
      const double w = q.is_one() ? 1.0 : 2.0;
      acc[std::move(q)] += w * (tf.coeff * tg.coeff);
    }
  }
  ExpPolyBuilder b;
  b.reserve(acc.size());
  for (auto& [q, c] : acc) b.push(q, c);
  return b.build();
}

}  // namespace ref

ExpPoly star_product(const ExpPoly& f, const ExpPoly& g) {
  if (f.empty() || g.empty()) return ExpPoly::zero();
  if (!fast_eligible(f, g)) return ref::star_product(f, g);

  const auto ft = fast_terms(f);
  const auto gt = fast_terms(g);
  return chunked_star(ft.size(), gt.size(),
                      [&](std::size_t lo, std::size_t hi, RatioAccumulator& acc) {
                        for (std::size_t i = lo; i < hi; ++i) {
                          const FastTerm& a = ft[i];
                          for (const FastTerm& b : gt) {
                            if (a.num * b.den < a.den * b.num) continue;  // q < 1 dropped
                            const double w = (a.num * b.den == a.den * b.num) ? 1.0 : 2.0;
                            acc.add(ratio_key(a, b), w * (a.coeff * b.coeff));
                          }
                        }
                      });
}

ExpPoly star_square(const ExpPoly& f) {
  if (f.empty()) return ExpPoly::zero();
  if (!fast_eligible(f, f)) return ref::star_product(f, f);

  const auto ft = fast_terms(f);
  // Terms are sorted ascending, so for i < j only q_j/q_i survives the
  // positive-frequency filter; the diagonal lands on the constant.
  return chunked_star(ft.size(), ft.size(),
                      [&](std::size_t lo, std::size_t hi, RatioAccumulator& acc) {
                        constexpr std::uint64_t one_key = (1ull << 32) | 1ull;
                        for (std::size_t j = lo; j < hi; ++j) {
                          const FastTerm& a = ft[j];
                          for (std::size_t i = 0; i < j; ++i) {
                            const FastTerm& b = ft[i];
                            acc.add(ratio_key(a, b), 2.0 * (a.coeff * b.coeff));
                          }
                          acc.add(one_key, 1.0 * (a.coeff * a.coeff));
                        }
                      });
}

ExpPoly s_func(const ExpPoly& f, const ExpPoly& g) {
  ExpPoly s = star_product(f, g);
  s.add_term(Rational(1), -s.coeff_sum());
  return s;
}

// ---------------------------------------------------------------------------
// Principal-value quadrature oracles
// ---------------------------------------------------------------------------

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
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
cplx panel_integral(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc{0.0, 0.0};
  for (int k = 0; k < kGlHalf; ++k) {
    acc += kGlW[k] * (f(mid - half * kGlX[k]) + f(mid + half * kGlX[k]));
  }
  return half * acc;
}

// Composite integration with per-panel results folded in index order;
// bit-deterministic for any thread count.
template <class F>
cplx integrate_panels(F&& f, double a, double b, std::size_t panels) {
  std::vector<cplx> vals(panels);
  const double h = (b - a) / static_cast<double>(panels);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(panels); ++i) {
    const double lo = a + h * static_cast<double>(i);
    vals[static_cast<std::size_t>(i)] = panel_integral(f, lo, lo + h);
  }
  cplx acc{0.0, 0.0};
  for (const cplx& v : vals) acc += v;
  return acc;
}

double max_log_freq(const ExpPoly& p) {
  double m = 0.0;
  for (const auto& t : p.terms()) m = std::max(m, std::abs(t.freq.log()));
  return m;
}

std::size_t pv_panels(double window, double omega_max) {
  const double h = std::min(0.5, 3.0 / std::max(1.0, omega_max));
  return static_cast<std::size_t>(std::ceil(2.0 * window / h));
}

}  // namespace

cplx pv_hilbert_check(const ExpPoly& p, double z, double window) {
  if (!p.vanishes_at_zero(1e-12)) {
    throw std::invalid_argument("pv_hilbert_check: polynomial must vanish at t = 0");
  }
  if (window < 8.0 * std::max(1.0, std::abs(z))) {
    std::ostringstream msg;
    msg << "pv_hilbert_check: window too small; tail estimate "
        << p.l1_norm() * std::abs(z) * 2.0 / (M_PI * std::max(window, 1.0));
    throw std::invalid_argument(msg.str());
  }
  if (z == 0.0) return -p.eval(0.0);

  const cplx dp0 = p.eval_derivative(cplx(0.0, 0.0));
  const cplx pz = p.eval(z);
  const cplx phi_prime_z = p.eval_derivative(cplx(z, 0.0)) - pz / z;

  auto phi = [&](double t) -> cplx {
    if (std::abs(t) < 1e-7) return z * dp0;  // p(t)/t -> p'(0)
    return z * p.eval(t) / t;
  };
  auto psi = [&](double t) -> cplx {
    const double d = t - z;
    if (std::abs(d) < 1e-7 * std::max(1.0, std::abs(z))) return phi_prime_z;
    return (phi(t) - pz) / d;
  };

  const std::size_t panels = pv_panels(window, max_log_freq(p));
  const cplx integral =
      integrate_panels(psi, -window, window, panels) + pz * std::log((window - z) / (window + z));
  const cplx rhs = integral / (kI * M_PI);
  return rhs - pz;
}

cplx pv_star_check(const ExpPoly& f, const ExpPoly& g, cplx z, double window) {
  if (window < 8.0 * std::max(1.0, std::abs(z))) {
    throw std::invalid_argument("pv_star_check: window too small for requested point");
  }
  const double omega = max_log_freq(f) + max_log_freq(g);
  const std::size_t panels = pv_panels(window, omega);
  auto h = [&](double t) -> cplx { return f.eval(t) * g.eval(-t); };

  cplx quadrature;
  if (z.imag() > 1e-12) {
    auto integrand = [&](double t) -> cplx { return h(t) / (t - z); };
    quadrature = integrate_panels(integrand, -window, window, panels) / (kI * M_PI);
  } else if (std::abs(z.imag()) <= 1e-12) {
    const double x = z.real();
    const cplx hz = f.eval(x) * g.eval(-x);
    const cplx hpz =
        f.eval_derivative(cplx(x, 0.0)) * g.eval(-x) - f.eval(x) * g.eval_derivative(cplx(-x, 0.0));
    auto psi = [&](double t) -> cplx {
      const double d = t - x;
      if (std::abs(d) < 1e-7 * std::max(1.0, std::abs(x))) return hpz;
      return (h(t) - hz) / d;
    };
    const cplx integral = integrate_panels(psi, -window, window, panels) +
                          hz * std::log((window - x) / (window + x));
    quadrature = hz + integral / (kI * M_PI);
  } else {
    throw std::invalid_argument("pv_star_check: lower half-plane evaluation not supported");
  }
  return quadrature - star_product(f, g).eval(z);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string poly_to_json(const ExpPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    arr.push_back({{"num", t.freq.num().str()},
                   {"den", t.freq.den().str()},
                   {"re", t.coeff.real()},
                   {"im", t.coeff.imag()}});
  }
  return arr.dump();
}

ExpPoly poly_from_json(const std::string& text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("poly_from_json: expected a JSON array");
  ExpPolyBuilder b;
  b.reserve(arr.size());
  for (const auto& item : arr) {
    bigint num(item.at("num").get<std::string>());
    bigint den(item.at("den").get<std::string>());
    b.push(Rational(std::move(num), std::move(den)),
           cplx(item.at("re").get<double>(), item.at("im").get<double>()));
  }
  return b.build();
}

}  // namespace xpz
