#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ncdirac {

/// Exact rational number over 64-bit integers.
///
/// Always normalized: denominator > 0, gcd(|num|, den) == 1. Products and
/// sums run through 128-bit intermediates and throw std::overflow_error if
/// the reduced result does not fit; the coefficients in this problem stay
/// tiny, so an overflow indicates a logic error rather than a capacity need.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_, tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    i128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    i128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  Rational inverse() const {
    if (num_ == 0) throw std::domain_error("Rational: inverse of zero");
    return Rational(num_ < 0 ? -den_ : den_, num_ < 0 ? -num_ : num_, tag{});
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;
  struct tag {};
  // Pre-normalized fast path.
  Rational(std::int64_t n, std::int64_t d, tag) : num_(n), den_(d) {}

  static Rational from128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rational: 64-bit overflow");
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), tag{});
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace ncdirac
