#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "wpl/errors.hpp"

namespace wpl {

// Exact rational on 64-bit integers; every operation is overflow checked and
// throws ArithmeticOverflow instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : n_(n) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) : n_(n), d_(d) { normalize(); }

  std::int64_t num() const { return n_; }
  std::int64_t den() const { return d_; }
  bool is_zero() const { return n_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.d_ == 1 && b.d_ == 1) return Rational(add(a.n_, b.n_));
    return Rational(add(mul(a.n_, b.d_), mul(b.n_, a.d_)), mul(a.d_, b.d_));
  }
  friend Rational operator-(const Rational& a) { return Rational(mul(a.n_, -1), a.d_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.n_ == 0 || b.n_ == 0) return Rational();
    const std::int64_t g1 = std::gcd(a.n_, b.d_);
    const std::int64_t g2 = std::gcd(b.n_, a.d_);
    return Rational(mul(a.n_ / g1, b.n_ / g2), mul(a.d_ / g2, b.d_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.n_ == 0) throw std::domain_error("division by zero rational");
    return a * Rational(b.d_, b.n_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  friend bool operator==(const Rational&, const Rational&) = default;

  std::string str() const {
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
  }

 private:
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("rational multiply overflow");
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("rational add overflow");
    return r;
  }
  void normalize() {
    if (d_ == 0) throw std::domain_error("zero denominator");
    if (d_ < 0) {
      n_ = mul(n_, -1);
      d_ = mul(d_, -1);
    }
    const std::int64_t g = std::gcd(n_, d_);
    if (g > 1) {
      n_ /= g;
      d_ /= g;
    }
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
};

}  // namespace wpl
