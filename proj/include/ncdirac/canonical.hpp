#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ncdirac/context.hpp"
#include "ncdirac/expr.hpp"

namespace ncdirac {

/// No commutation rule registered for an adjacent atom pair.
struct UnknownAtomPair : std::runtime_error {
  UnknownAtomPair(const Atom& a, const Atom& b)
      : std::runtime_error("no commutation rule for atom pair (" + a.name() + ", " + b.name() +
                           ")") {}
};

namespace detail {

inline int epsilon3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (1,2,3)
  if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) ||
      (i == 3 && j == 1 && k == 2))
    return 1;
  return -1;
}

/// [x_i, x_j] under the active base table.
inline ScalarSum base_xx(int i, int j, const AlgebraContext& ctx) {
  if (!ctx.theta_active()) return ScalarSum::zero();
  int eps = epsilon3(i, j, 3);  // Theta_vec points along axis 3
  if (eps == 0) return ScalarSum::zero();
  return ScalarSum::coeff(ctx.conv.kappa_theta * Rational(eps), 1,
                          SymMonomial::of(SymConst::Theta));
}

/// [p_i, p_j] under the active base table.
inline ScalarSum base_pp(int i, int j, const AlgebraContext& ctx) {
  if (!ctx.eta_active()) return ScalarSum::zero();
  int eps = epsilon3(i, j, 3);
  if (eps == 0) return ScalarSum::zero();
  return ScalarSum::coeff(ctx.conv.kappa_eta * Rational(eps), 1, SymMonomial::of(SymConst::Eta));
}

/// [x_i, p_j] under the active base table. In the deformed phase-space mode
/// this is the published coefficient i*hbar*(1 + Theta*eta/(4 hbar^2)).
inline ScalarSum base_xp(int i, int j, const AlgebraContext& ctx) {
  if (i != j) return ScalarSum::zero();
  ScalarSum v = ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar));
  if (ctx.mode == AlgebraMode::NCPhaseSpace && ctx.nc.theta_on() && ctx.nc.eta_on()) {
    SymMonomial m = SymMonomial::of(SymConst::Theta) * SymMonomial::of(SymConst::Eta) *
                    SymMonomial::of(SymConst::Hbar, -1);
    v += ScalarSum::coeff(Rational(1, 4), 1, m);
  }
  return v;
}

}  // namespace detail

/// Rewrite rule for one adjacent pair: a*b = sign * (b*a) + correction.
struct SwapRule {
  int sign = 1;
  OperatorExpr correction;  // already a full expression (may be zero)
};

/// Rule for an ordered pair with rank(a) > rank(b). Throws UnknownAtomPair
/// where the algebra is genuinely undefined (field atoms against momenta in
/// the deformed base modes).
inline SwapRule base_swap(const Atom& a, const Atom& b, const AlgebraContext& ctx) {
  using K = AtomKind;
  // Dirac atoms commute with the whole phase-space / field sector.
  if (a.is_dirac() && !b.is_dirac()) return {1, OperatorExpr::zero()};
  if (a.is_dirac() && b.is_dirac()) {
    // distinct generators of the Clifford algebra anticommute
    return {-1, OperatorExpr::zero()};
  }
  if (a.kind == K::Momentum && b.kind == K::Position)
    return {1, OperatorExpr::scalar(-detail::base_xp(b.axis, a.axis, ctx))};
  if (a.kind == K::Position && b.kind == K::Position)
    return {1, OperatorExpr::scalar(detail::base_xx(a.axis, b.axis, ctx))};
  if (a.kind == K::Momentum && b.kind == K::Momentum)
    return {1, OperatorExpr::scalar(detail::base_pp(a.axis, b.axis, ctx))};
  if (a.is_field_like() && b.kind == K::Position) return {1, OperatorExpr::zero()};
  if (a.is_field_like() && b.is_field_like()) return {1, OperatorExpr::zero()};
  if (a.is_field_like() && b.kind == K::Momentum) {
    if (ctx.mode != AlgebraMode::Commutative) throw UnknownAtomPair(a, b);
    // [F(x), p_j] = i hbar dF/dx_j, derivative acting on the field only.
    auto d = raise_partial(a, b.axis, ctx);
    if (!d) return {1, OperatorExpr::zero()};
    return {1, OperatorExpr::term(ScalarSum::coeff(Rational(1), 1,
                                                   SymMonomial::of(SymConst::Hbar)),
                                  {*d})};
  }
  throw UnknownAtomPair(a, b);
}

namespace detail {

inline void normalize_term_into(OperatorExpr& out, const ScalarSum& coeff0,
                                const FactorSeq& factors0, const AlgebraContext& ctx) {
  std::vector<Term> work;
  work.push_back(Term{coeff0, factors0});
  while (!work.empty()) {
    Term t = std::move(work.back());
    work.pop_back();
    if (t.coeff.is_zero()) continue;
    bool rewritten = false;
    for (std::size_t i = 0; i + 1 < t.factors.size(); ++i) {
      const Atom& a = t.factors[i];
      const Atom& b = t.factors[i + 1];
      if (a.is_dirac() && a == b) {
        // alpha_i^2 = beta^2 = 1
        FactorSeq shorter(t.factors.begin(), t.factors.begin() + i);
        shorter.insert(shorter.end(), t.factors.begin() + i + 2, t.factors.end());
        work.push_back(Term{t.coeff, std::move(shorter)});
        rewritten = true;
        break;
      }
      if (b < a) {
        SwapRule rule = base_swap(a, b, ctx);
        FactorSeq swapped = t.factors;
        std::swap(swapped[i], swapped[i + 1]);
        ScalarSum swapped_coeff = rule.sign == 1 ? t.coeff : -t.coeff;
        work.push_back(Term{std::move(swapped_coeff), std::move(swapped)});
        if (!rule.correction.is_zero()) {
          for (const auto& [cf, cc] : rule.correction.terms()) {
            FactorSeq seq(t.factors.begin(), t.factors.begin() + i);
            seq.insert(seq.end(), cf.begin(), cf.end());
            seq.insert(seq.end(), t.factors.begin() + i + 2, t.factors.end());
            work.push_back(Term{t.coeff * cc, std::move(seq)});
          }
        }
        rewritten = true;
        break;
      }
    }
    if (!rewritten) out.add_term(t.coeff, t.factors);
  }
}

}  // namespace detail

/// Normal form under the context's base algebra: factors sorted into the
/// canonical atom order with all commutator corrections expanded, Dirac
/// products reduced to the 16-element basis, like terms merged, zero terms
/// dropped. Idempotent and a congruence for the operator product.
inline OperatorExpr canonicalize(const OperatorExpr& e, const AlgebraContext& ctx) {
  OperatorExpr out;
  for (const auto& [f, c] : e.terms()) detail::normalize_term_into(out, c, f, ctx);
  return out;
}

/// [a, b], canonicalized. Exactly bilinear and antisymmetric.
inline OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b,
                               const AlgebraContext& ctx) {
  return canonicalize(a * b - b * a, ctx);
}

/// {a, b}, canonicalized.
inline OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b,
                                   const AlgebraContext& ctx) {
  return canonicalize(a * b + b * a, ctx);
}

/// Replace every field atom (and formal derivative atom) by its polynomial
/// from the active field spec. Output contains no field-like atoms.
inline OperatorExpr resolve_fields(const OperatorExpr& e, const AlgebraContext& ctx) {
  OperatorExpr out;
  for (const auto& [f, c] : e.terms()) {
    OperatorExpr prod = OperatorExpr::scalar(c);
    for (const Atom& a : f) {
      switch (a.kind) {
        case AtomKind::PhiField: prod *= ctx.field.phi(); break;
        case AtomKind::AField: prod *= ctx.field.a(a.axis); break;
        case AtomKind::PartialField:
          prod *= ctx.field.derivative(a.field, a.deriv);
          break;
        default: prod *= OperatorExpr::atom(a); break;
      }
      if (prod.is_zero()) break;
    }
    out += prod;
  }
  return out;
}

/// Formal partial derivative along one axis. Defined for expressions built
/// from coordinates, field atoms and Dirac matrices; differentiating a
/// momentum atom is rejected as underspecified.
inline OperatorExpr differentiate(const OperatorExpr& e, int axis, const AlgebraContext& ctx) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("differentiate: axis must be 1..3");
  if (e.contains_kind(AtomKind::Momentum))
    throw std::invalid_argument("differentiate: expression contains a momentum atom");
  OperatorExpr resolved = resolve_fields(e, ctx);
  OperatorExpr out;
  for (const auto& [f, c] : resolved.terms()) {
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

/// Theta -> 0, eta -> 0 in every coefficient.
inline OperatorExpr commutative_coefficients(const OperatorExpr& e) {
  return e.substituted_zero({SymConst::Theta, SymConst::Eta});
}

}  // namespace ncdirac
