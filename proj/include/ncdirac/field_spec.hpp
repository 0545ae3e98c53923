#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "ncdirac/expr.hpp"

namespace ncdirac {

namespace detail {

/// Degree in the position atoms of a polynomial expression.
inline int position_degree(const OperatorExpr& e) {
  int deg = 0;
  for (const auto& [f, c] : e.terms()) {
    int d = 0;
    for (const Atom& a : f) {
      if (a.kind != AtomKind::Position)
        throw std::invalid_argument("field polynomial may contain position atoms only");
      ++d;
    }
    deg = std::max(deg, d);
  }
  return deg;
}

/// Formal partial derivative of a position-polynomial.
inline OperatorExpr poly_partial(const OperatorExpr& e, int axis) {
  OperatorExpr out;
  for (const auto& [f, c] : e.terms()) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k].kind == AtomKind::Position && f[k].axis == axis) {
        FactorSeq rest;
        for (std::size_t j = 0; j < f.size(); ++j)
          if (j != k) rest.push_back(f[j]);
        out.add_term(c, std::move(rest));
      }
    }
  }
  return out;
}

}  // namespace detail

/// Static electromagnetic potentials, restricted to polynomial coordinate
/// dependence. The vector potential defaults to the symmetric gauge
/// A = (-B x2/2, B x1/2, 0) (uniform magnetic field B along axis 3); the
/// scalar potential defaults to Phi = -(E1 x1 + E2 x2 + E3 x3) (uniform
/// electric field). B and E_i stay symbolic constants.
class FieldSpec {
 public:
  enum class Gauge { Symmetric, Custom };

  FieldSpec() : FieldSpec(symmetric_gauge_uniform_e()) {}

  static FieldSpec symmetric_gauge_uniform_e() {
    FieldSpec f;
    f.gauge_ = Gauge::Symmetric;
    ScalarSum half_b = ScalarSum::coeff(Rational(1, 2), 0, SymMonomial::of(SymConst::MagneticB));
    f.a_[0] = OperatorExpr::term(-half_b, {Atom::position(2)});
    f.a_[1] = OperatorExpr::term(half_b, {Atom::position(1)});
    f.a_[2] = OperatorExpr::zero();
    f.phi_ = uniform_e_potential();
    f.finish();
    return f;
  }

  /// Free field: A = 0, Phi = 0.
  static FieldSpec free_field() {
    FieldSpec f;
    f.gauge_ = Gauge::Custom;
    f.phi_ = OperatorExpr::zero();
    for (auto& a : f.a_) a = OperatorExpr::zero();
    f.finish();
    return f;
  }

  /// Symmetric gauge with Phi = 0.
  static FieldSpec symmetric_gauge_only() {
    FieldSpec f = symmetric_gauge_uniform_e();
    f.phi_ = OperatorExpr::zero();
    f.finish();
    return f;
  }

  /// Uniform electric field only (A = 0).
  static FieldSpec uniform_e_only() {
    FieldSpec f = free_field();
    f.phi_ = uniform_e_potential();
    f.finish();
    return f;
  }

  static FieldSpec custom(std::array<OperatorExpr, 3> a, OperatorExpr phi, int d_max = 2) {
    FieldSpec f;
    f.gauge_ = Gauge::Custom;
    f.a_ = std::move(a);
    f.phi_ = std::move(phi);
    f.finish();
    if (f.degree_ > d_max)
      throw std::invalid_argument("FieldSpec: polynomial degree exceeds d_max");
    return f;
  }

  Gauge gauge() const { return gauge_; }
  bool is_static() const { return true; }  // v1: static fields only

  const OperatorExpr& phi() const { return phi_; }
  const OperatorExpr& a(int axis) const { return a_.at(axis - 1); }

  const OperatorExpr& field(FieldRef ref) const { return ref.is_phi() ? phi_ : a(ref.axis()); }

  /// Degree of one field's polynomial.
  int degree(FieldRef ref) const { return detail::position_degree(field(ref)); }
  /// Max degree across all potentials.
  int max_degree() const { return degree_; }

  /// The evaluated derivative d^multi field / dx^multi as a polynomial.
  OperatorExpr derivative(FieldRef ref, const std::array<std::int8_t, 3>& multi) const {
    OperatorExpr cur = field(ref);
    for (int ax = 1; ax <= 3; ++ax)
      for (int k = 0; k < multi[ax - 1]; ++k) cur = detail::poly_partial(cur, ax);
    return cur;
  }

 private:
  static OperatorExpr uniform_e_potential() {
    OperatorExpr phi;
    const SymConst es[3] = {SymConst::ElectricE1, SymConst::ElectricE2, SymConst::ElectricE3};
    for (int i = 1; i <= 3; ++i)
      phi.add_term(ScalarSum::coeff(Rational(-1), 0, SymMonomial::of(es[i - 1])),
                   {Atom::position(i)});
    return phi;
  }

  void finish() {
    degree_ = detail::position_degree(phi_);
    for (const auto& a : a_) degree_ = std::max(degree_, detail::position_degree(a));
  }

  Gauge gauge_ = Gauge::Symmetric;
  std::array<OperatorExpr, 3> a_{};
  OperatorExpr phi_{};
  int degree_ = 0;
};

}  // namespace ncdirac
