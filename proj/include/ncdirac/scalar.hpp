#pragma once

#include <complex>
#include <cmath>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncdirac/rational.hpp"
#include "ncdirac/symbols.hpp"

namespace ncdirac {

/// One exact scalar monomial: rational * i^i_power * product of constants.
/// i is kept as an exact fourth root of unity; i_power is normalized to
/// {0, 1} by folding i^2 = -1 into the sign of the rational part.
struct ScalarCoeff {
  Rational rational;
  int i_power = 0;  // 0 or 1 after normalization
  SymMonomial monomial;

  ScalarCoeff() = default;
  ScalarCoeff(Rational r, int ipow, SymMonomial m)
      : rational(r), i_power(((ipow % 4) + 4) % 4), monomial(m) {
    if (i_power >= 2) {
      rational = -rational;
      i_power -= 2;
    }
  }
};

/// Canonical sum of scalar monomials; the coefficient type of every term in
/// the symbolic kernel. All arithmetic is exact.
class ScalarSum {
 public:
  using Key = std::pair<SymMonomial, int>;  // (monomial, i_power in {0,1})

  ScalarSum() = default;

  static ScalarSum zero() { return ScalarSum(); }
  static ScalarSum one() { return of(Rational(1)); }
  static ScalarSum of(Rational r) { return from_coeff(ScalarCoeff(r, 0, SymMonomial::unit())); }
  static ScalarSum imaginary_unit() { return from_coeff(ScalarCoeff(1, 1, SymMonomial::unit())); }
  static ScalarSum symbol(SymConst s, int power = 1) {
    return from_coeff(ScalarCoeff(1, 0, SymMonomial::of(s, power)));
  }
  static ScalarSum from_coeff(const ScalarCoeff& c) {
    ScalarSum s;
    s.add_entry(c);
    return s;
  }
  /// rational * i^ipow * monomial in one call.
  static ScalarSum coeff(Rational r, int ipow, SymMonomial m) {
    return from_coeff(ScalarCoeff(r, ipow, m));
  }

  bool is_zero() const { return entries_.empty(); }
  bool is_one() const { return *this == one(); }
  std::size_t size() const { return entries_.size(); }
  bool is_single_monomial() const { return entries_.size() == 1; }

  std::vector<ScalarCoeff> coeffs() const {
    std::vector<ScalarCoeff> out;
    out.reserve(entries_.size());
    for (const auto& [key, rat] : entries_) out.push_back(ScalarCoeff(rat, key.second, key.first));
    return out;
  }

  friend bool operator==(const ScalarSum& a, const ScalarSum& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const ScalarSum& a, const ScalarSum& b) { return !(a == b); }
  friend bool operator<(const ScalarSum& a, const ScalarSum& b) { return a.entries_ < b.entries_; }

  friend ScalarSum operator+(const ScalarSum& a, const ScalarSum& b) {
    ScalarSum r = a;
    for (const auto& [key, rat] : b.entries_) r.add_raw(key, rat);
    return r;
  }
  friend ScalarSum operator-(const ScalarSum& a) {
    ScalarSum r;
    for (const auto& [key, rat] : a.entries_) r.entries_.emplace(key, -rat);
    return r;
  }
  friend ScalarSum operator-(const ScalarSum& a, const ScalarSum& b) { return a + (-b); }
  friend ScalarSum operator*(const ScalarSum& a, const ScalarSum& b) {
    ScalarSum r;
    for (const auto& [ka, ra] : a.entries_)
      for (const auto& [kb, rb] : b.entries_) {
        ScalarCoeff c(ra * rb, ka.second + kb.second, ka.first * kb.first);
        r.add_entry(c);
      }
    return r;
  }

  ScalarSum& operator+=(const ScalarSum& b) { return *this = *this + b; }
  ScalarSum& operator-=(const ScalarSum& b) { return *this = *this - b; }
  ScalarSum& operator*=(const ScalarSum& b) { return *this = *this * b; }

  /// Substitute zero for each listed constant (kills every entry whose
  /// monomial carries a positive power of it).
  ScalarSum substituted_zero(std::initializer_list<SymConst> syms) const {
    ScalarSum r;
    for (const auto& [key, rat] : entries_) {
      bool dies = false;
      for (SymConst s : syms) {
        int d = key.first.degree_of(s);
        if (d > 0) dies = true;
        if (d < 0) throw std::domain_error("substituted_zero: negative power of zeroed constant");
      }
      if (!dies) r.entries_.emplace(key, rat);
    }
    return r;
  }

  /// Highest power of `s` across entries (0 when absent everywhere).
  int max_degree_of(SymConst s) const {
    int d = 0;
    for (const auto& [key, rat] : entries_) d = std::max(d, key.first.degree_of(s));
    return d;
  }
  int min_degree_of(SymConst s) const {
    if (entries_.empty()) return 0;
    int d = 127;
    for (const auto& [key, rat] : entries_) d = std::min(d, key.first.degree_of(s));
    return d;
  }

  /// Exact quotient by a single-monomial scalar; nullopt if rhs is zero or
  /// a genuine sum.
  std::optional<ScalarSum> divided_by_monomial(const ScalarSum& rhs) const {
    if (rhs.entries_.size() != 1) return std::nullopt;
    const auto& [key, rat] = *rhs.entries_.begin();
    // 1 / i = -i.
    ScalarCoeff inv(rat.inverse(), key.second == 1 ? 3 : 0, key.first.inverse());
    return *this * from_coeff(inv);
  }

  /// Numeric value with every constant bound; throws on an unbound constant
  /// that actually occurs.
  std::complex<double> eval(const std::map<std::string, double>& bindings) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [key, rat] : entries_) {
      double mag = rat.to_double();
      for (int k = 0; k < kNumSymConsts; ++k) {
        int ex = key.first.exp[k];
        if (ex == 0) continue;
        auto it = bindings.find(kSymNames[k]);
        if (it == bindings.end())
          throw std::invalid_argument(std::string("unbound constant: ") + kSymNames[k]);
        if (it->second == 0.0 && ex < 0)
          throw std::domain_error(std::string("zero binding raised to negative power: ") +
                                  kSymNames[k]);
        mag *= std::pow(it->second, ex);
      }
      acc += (key.second == 1) ? std::complex<double>(0.0, mag) : std::complex<double>(mag, 0.0);
    }
    return acc;
  }

  const std::map<Key, Rational>& entries() const { return entries_; }

 private:
  void add_entry(const ScalarCoeff& c) { add_raw(Key(c.monomial, c.i_power), c.rational); }
  void add_raw(const Key& key, const Rational& rat) {
    if (rat.is_zero()) return;
    auto [it, inserted] = entries_.emplace(key, rat);
    if (!inserted) {
      it->second += rat;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  std::map<Key, Rational> entries_;
};

inline ScalarSum operator*(const Rational& r, const ScalarSum& s) { return ScalarSum::of(r) * s; }

}  // namespace ncdirac
