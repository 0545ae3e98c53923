#pragma once

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <utility>

#include "ncdirac/atom.hpp"
#include "ncdirac/scalar.hpp"

namespace ncdirac {

/// One addend of an operator expression: exact coefficient times an ordered
/// product of atoms. The empty factor sequence is the identity operator.
struct Term {
  ScalarSum coeff;
  FactorSeq factors;
};

/// Sum of terms keyed by factor sequence; like sequences are always merged
/// and zero coefficients pruned, so equality of two canonicalized
/// expressions is plain structural equality.
///
/// Construction and multiplication do NOT reorder factors; canonicalize()
/// (canonical.hpp) produces the normal form under an algebra context.
class OperatorExpr {
 public:
  OperatorExpr() = default;
  explicit OperatorExpr(const ScalarSum& s) { add_term(s, {}); }
  explicit OperatorExpr(const Atom& a) { add_term(ScalarSum::one(), {a}); }

  static OperatorExpr zero() { return OperatorExpr(); }
  static OperatorExpr identity() { return OperatorExpr(ScalarSum::one()); }
  static OperatorExpr term(const ScalarSum& c, FactorSeq f) {
    OperatorExpr e;
    e.add_term(c, std::move(f));
    return e;
  }
  static OperatorExpr atom(const Atom& a) { return OperatorExpr(a); }
  static OperatorExpr scalar(const ScalarSum& s) { return OperatorExpr(s); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<FactorSeq, ScalarSum>& terms() const { return terms_; }

  /// Coefficient of an exact factor sequence (zero if absent).
  ScalarSum coefficient_of(const FactorSeq& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? ScalarSum::zero() : it->second;
  }

  void add_term(const ScalarSum& c, FactorSeq f) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(f), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr r = a;
    for (const auto& [f, c] : b.terms_) r.add_term(c, f);
    return r;
  }
  friend OperatorExpr operator-(const OperatorExpr& a) {
    OperatorExpr r;
    for (const auto& [f, c] : a.terms_) r.terms_.emplace(f, -c);
    return r;
  }
  friend OperatorExpr operator-(const OperatorExpr& a, const OperatorExpr& b) { return a + (-b); }

  /// Operator product: distributes over sums, concatenates factor
  /// sequences in the given order.
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr r;
    for (const auto& [fa, ca] : a.terms_)
      for (const auto& [fb, cb] : b.terms_) {
        FactorSeq f = fa;
        f.insert(f.end(), fb.begin(), fb.end());
        r.add_term(ca * cb, std::move(f));
      }
    return r;
  }

  friend OperatorExpr operator*(const ScalarSum& s, const OperatorExpr& e) {
    OperatorExpr r;
    for (const auto& [f, c] : e.terms_) r.add_term(s * c, f);
    return r;
  }

  OperatorExpr& operator+=(const OperatorExpr& b) { return *this = *this + b; }
  OperatorExpr& operator-=(const OperatorExpr& b) { return *this = *this - b; }
  OperatorExpr& operator*=(const OperatorExpr& b) { return *this = *this * b; }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OperatorExpr& a, const OperatorExpr& b) { return !(a == b); }

  /// Set the listed constants to zero in every coefficient.
  OperatorExpr substituted_zero(std::initializer_list<SymConst> syms) const {
    OperatorExpr r;
    for (const auto& [f, c] : terms_) r.add_term(c.substituted_zero(syms), f);
    return r;
  }

  bool contains_kind(AtomKind k) const {
    for (const auto& [f, c] : terms_)
      for (const Atom& a : f)
        if (a.kind == k) return true;
    return false;
  }

  bool contains_field_atoms() const {
    for (const auto& [f, c] : terms_)
      for (const Atom& a : f)
        if (a.is_field_like()) return true;
    return false;
  }

  int max_coeff_degree_of(SymConst s) const {
    int d = 0;
    for (const auto& [f, c] : terms_) d = std::max(d, c.max_degree_of(s));
    return d;
  }

 private:
  std::map<FactorSeq, ScalarSum> terms_;
};

inline OperatorExpr operator*(const Rational& r, const OperatorExpr& e) {
  return ScalarSum::of(r) * e;
}

}  // namespace ncdirac
