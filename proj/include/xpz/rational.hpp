#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace xpz {

using bigint = boost::multiprecision::cpp_int;

// Exact positive rational q = num/den, stored in lowest terms with den > 0.
// Used as the frequency of a basis function q^{it}; ordering and equality
// are exact, never floating point.
class Rational {
 public:
  Rational() : num_(1), den_(1) {}

  Rational(long long n) : num_(n), den_(1) { require_positive(); }

  Rational(bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) {
    require_positive();
    normalize();
  }

  static Rational of(long long n, long long d = 1) { return Rational(bigint(n), bigint(d)); }

  const bigint& num() const { return num_; }
  const bigint& den() const { return den_; }

  bool is_one() const { return num_ == den_; }
  bool greater_one() const { return num_ > den_; }
  bool less_one() const { return num_ < den_; }

  Rational reciprocal() const { return Rational(den_, num_); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  double to_double() const { return big_to_double(num_) / big_to_double(den_); }

  // Natural log, correct even when num/den exceed double range.
  double log() const { return big_log(num_) - big_log(den_); }

  // True when both num and den fit a 32-bit unsigned (fast-path star product).
  bool fits_u32() const { return num_ <= 0xFFFFFFFFu && den_ <= 0xFFFFFFFFu; }

  std::uint64_t num_u64() const { return static_cast<std::uint64_t>(num_); }
  std::uint64_t den_u64() const { return static_cast<std::uint64_t>(den_); }

  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  std::size_t hash() const {
    std::uint64_t a = static_cast<std::uint64_t>(num_ & 0xFFFFFFFFFFFFFFFFull);
    std::uint64_t b = static_cast<std::uint64_t>(den_ & 0xFFFFFFFFFFFFFFFFull);
    std::uint64_t h = a * 0x9E3779B97F4A7C15ull;
    h ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }

 private:
  void require_positive() const {
    if (num_ <= 0 || den_ <= 0) throw std::invalid_argument("Rational: frequency must be positive");
  }

  void normalize() {
    bigint g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static double big_to_double(const bigint& v) { return v.convert_to<double>(); }

// GCC 11 misreads the boost shift internals here (false positive).
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overread"
  static double big_log(const bigint& v) {
    if (v <= 0) throw std::domain_error("Rational: log of non-positive value");
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits < 900) return std::log(v.convert_to<double>());
    const unsigned shift = bits - 512;
    bigint top(v);
    top >>= shift;
    return std::log(top.convert_to<double>()) + shift * 0.6931471805599453094;
  }
#pragma GCC diagnostic pop

  bigint num_;
  bigint den_;
};

}  // namespace xpz

template <>
struct std::hash<xpz::Rational> {
  std::size_t operator()(const xpz::Rational& r) const { return r.hash(); }
};
