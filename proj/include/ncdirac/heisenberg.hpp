#pragma once

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncdirac/dirac_model.hpp"

namespace ncdirac {

enum class TermGroup {
  Velocity,
  Lambda,
  Electric,
  Magnetic,
  ThetaCorrection,
  EtaCorrection,
  Residue,
};

inline const char* term_group_name(TermGroup g) {
  switch (g) {
    case TermGroup::Velocity: return "velocity";
    case TermGroup::Lambda: return "lambda";
    case TermGroup::Electric: return "electric";
    case TermGroup::Magnetic: return "magnetic";
    case TermGroup::ThetaCorrection: return "theta-correction";
    case TermGroup::EtaCorrection: return "eta-correction";
    case TermGroup::Residue: return "residue";
  }
  return "?";
}

/// One intermediate commutator kept for auditing: the raw (unordered)
/// product difference and its canonical value. The raw side is what the
/// matrix oracle realizes, so the pair is a genuine cross-kernel check.
struct TraceEntry {
  std::string label;
  OperatorExpr lhs_raw;
  OperatorExpr value;
};

struct RateComponent {
  OperatorExpr total;
  std::map<TermGroup, OperatorExpr> groups;
};

struct RateResult {
  std::string observable;  // "x" or "D"
  OperatorExpr hamiltonian;
  std::array<OperatorExpr, 3> observable_expr;
  std::array<RateComponent, 3> comp;
  std::vector<TraceEntry> trace;

  const OperatorExpr& total(int axis) const { return comp.at(axis - 1).total; }
  OperatorExpr group(int axis, TermGroup g) const {
    auto it = comp.at(axis - 1).groups.find(g);
    return it == comp.at(axis - 1).groups.end() ? OperatorExpr::zero() : it->second;
  }
};

/// d F / dt = explicit_dt + (i/hbar) [H, F], canonicalized.
inline OperatorExpr heisenberg_rate(const OperatorExpr& f, const OperatorExpr& h,
                                    const OperatorExpr& explicit_dt, const AlgebraContext& ctx) {
  ScalarSum i_over_hbar = ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar, -1));
  return canonicalize(canonicalize(explicit_dt, ctx) + i_over_hbar * commutator(h, f, ctx), ctx);
}

namespace detail {

struct DeformationSplit {
  OperatorExpr theta, eta, mixed, rest;
};

/// Split at scalar-monomial granularity by deformation-parameter content.
inline DeformationSplit split_by_deformation(const OperatorExpr& e) {
  DeformationSplit out;
  for (const auto& [factors, coeff] : e.terms()) {
    for (const ScalarCoeff& c : coeff.coeffs()) {
      int dt = c.monomial.degree_of(SymConst::Theta);
      int de = c.monomial.degree_of(SymConst::Eta);
      OperatorExpr* dst = &out.rest;
      if (dt > 0 && de > 0)
        dst = &out.mixed;
      else if (dt > 0)
        dst = &out.theta;
      else if (de > 0)
        dst = &out.eta;
      dst->add_term(ScalarSum::from_coeff(c), factors);
    }
  }
  return out;
}

inline OperatorExpr scaled_commutator_total(const OperatorExpr& h, const OperatorExpr& f,
                                            const AlgebraContext& ctx) {
  ScalarSum i_over_hbar = ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar, -1));
  return canonicalize(i_over_hbar * commutator(h, f, ctx), ctx);
}

inline void push_trace(std::vector<TraceEntry>& trace, const std::string& label,
                       const OperatorExpr& a, const OperatorExpr& b, const AlgebraContext& ctx) {
  TraceEntry e;
  e.label = label;
  e.lhs_raw = a * b - b * a;
  e.value = canonicalize(e.lhs_raw, ctx);
  trace.push_back(std::move(e));
}

/// grad_a (alpha.A - Phi): a Dirac-matrix-valued polynomial.
inline OperatorExpr grad_alpha_a_minus_phi(const AlgebraContext& ctx, int axis) {
  std::array<std::int8_t, 3> multi{};
  multi[axis - 1] = 1;
  OperatorExpr v;
  for (int i = 1; i <= 3; ++i)
    v += OperatorExpr::atom(Atom::alpha(i)) * ctx.field.derivative(FieldRef::a(i), multi);
  v -= ctx.field.derivative(FieldRef::phi(), multi);
  return canonicalize(v, ctx);
}

/// (Theta_vec x V)_j with Theta_vec = (0,0,Theta), V_a = grad_a(alpha.A - Phi).
inline OperatorExpr theta_cross_grad(const AlgebraContext& ctx, int j) {
  OperatorExpr out;
  for (int l = 1; l <= 3; ++l) {
    int eps = epsilon3(j, 3, l);
    if (eps == 0) continue;
    out += ScalarSum::coeff(Rational(eps), 0, SymMonomial::of(SymConst::Theta)) *
           grad_alpha_a_minus_phi(ctx, l);
  }
  return canonicalize(out, ctx);
}

/// (eta_vec x alpha)_j with eta_vec = (0,0,eta).
inline OperatorExpr eta_cross_alpha(int j) {
  OperatorExpr out;
  for (int l = 1; l <= 3; ++l) {
    int eps = epsilon3(j, 3, l);
    if (eps == 0) continue;
    out.add_term(ScalarSum::coeff(Rational(eps), 0, SymMonomial::of(SymConst::Eta)),
                 {Atom::alpha(l)});
  }
  return out;
}

}  // namespace detail

/// dx/dt: velocity group c*alpha plus the Theta-linear shift.
inline RateResult position_rate(const HamiltonianBundle& bundle, const AlgebraContext& ctx) {
  RateResult r;
  r.observable = "x";
  r.hamiltonian = bundle.h_nc;
  for (int j = 1; j <= 3; ++j) {
    OperatorExpr xj = OperatorExpr::atom(Atom::position(j));
    r.observable_expr[j - 1] = xj;
    for (const auto& [name, part] : bundle.parts()) {
      if (part.is_zero()) continue;
      detail::push_trace(r.trace, "[" + name + ", x" + std::to_string(j) + "]", part, xj, ctx);
    }
    RateComponent rc;
    rc.total = detail::scaled_commutator_total(bundle.h_nc, xj, ctx);
    auto split = detail::split_by_deformation(rc.total);
    OperatorExpr velocity = OperatorExpr::term(ScalarSum::symbol(SymConst::LightSpeed),
                                               {Atom::alpha(j)});
    rc.groups[TermGroup::Velocity] = velocity;
    rc.groups[TermGroup::Lambda] = split.theta;
    rc.groups[TermGroup::EtaCorrection] = split.eta;
    rc.groups[TermGroup::Residue] =
        canonicalize(split.rest - velocity + split.mixed, ctx);
    r.comp[j - 1] = std::move(rc);
  }
  return r;
}

/// Kinetic momentum D = p - (e/c) A(x), canonical, one component per axis.
inline std::array<OperatorExpr, 3> kinetic_momentum(const FieldSpec& f) {
  AlgebraContext ctx = AlgebraContext::commutative(f);
  std::array<OperatorExpr, 3> d;
  ScalarSum e_over_c = ScalarSum::coeff(Rational(1), 0,
                                        SymMonomial::of(SymConst::Charge) *
                                            SymMonomial::of(SymConst::LightSpeed, -1));
  for (int j = 1; j <= 3; ++j)
    d[j - 1] = canonicalize(OperatorExpr::atom(Atom::momentum(j)) - e_over_c * f.a(j), ctx);
  return d;
}

/// dD/dt grouped as electric + magnetic + Theta- and eta-corrections. Static
/// fields: the explicit time-derivative contribution is identically zero and
/// is recorded as such in the trace.
inline RateResult kinetic_momentum_rate(const HamiltonianBundle& bundle, const FieldSpec& f,
                                        const AlgebraContext& ctx) {
  RateResult r;
  r.observable = "D";
  r.hamiltonian = bundle.h_nc;
  std::array<OperatorExpr, 3> d_ops = kinetic_momentum(f);

  r.trace.push_back({"dA/dt (static fields)", OperatorExpr::zero(), OperatorExpr::zero()});
  for (int j = 1; j <= 3; ++j) {
    OperatorExpr pj = OperatorExpr::atom(Atom::momentum(j));
    OperatorExpr aj = canonicalize(f.a(j), ctx);
    for (const auto& [name, part] : bundle.parts()) {
      if (part.is_zero()) continue;
      detail::push_trace(r.trace, "[" + name + ", p" + std::to_string(j) + "]", part, pj, ctx);
      if (!aj.is_zero())
        detail::push_trace(r.trace, "[" + name + ", A" + std::to_string(j) + "]", part, aj, ctx);
    }

    RateComponent rc;
    r.observable_expr[j - 1] = d_ops[j - 1];
    rc.total = detail::scaled_commutator_total(bundle.h_nc, d_ops[j - 1], ctx);
    auto split = detail::split_by_deformation(rc.total);

    std::array<std::int8_t, 3> dj{};
    dj[j - 1] = 1;
    OperatorExpr electric = canonicalize(
        ScalarSum::coeff(Rational(-1), 0, SymMonomial::of(SymConst::Charge)) *
            ctx.field.derivative(FieldRef::phi(), dj),
        ctx);
    OperatorExpr magnetic;
    for (int i = 1; i <= 3; ++i) {
      std::array<std::int8_t, 3> di{};
      di[i - 1] = 1;
      OperatorExpr curl_piece = ctx.field.derivative(FieldRef::a(i), dj) -
                                ctx.field.derivative(FieldRef::a(j), di);
      magnetic += ScalarSum::symbol(SymConst::Charge) *
                  (OperatorExpr::atom(Atom::alpha(i)) * curl_piece);
    }
    magnetic = canonicalize(magnetic, ctx);

    rc.groups[TermGroup::Electric] = electric;
    rc.groups[TermGroup::Magnetic] = magnetic;
    rc.groups[TermGroup::ThetaCorrection] = split.theta;
    rc.groups[TermGroup::EtaCorrection] = split.eta;
    rc.groups[TermGroup::Residue] =
        canonicalize(split.rest - electric - magnetic + split.mixed, ctx);
    r.comp[j - 1] = std::move(rc);
  }
  return r;
}

/// Theta -> 0, eta -> 0 everywhere; vanished terms and groups drop out.
inline RateResult commutative_limit(const RateResult& r) {
  RateResult out;
  out.observable = r.observable;
  out.hamiltonian = commutative_coefficients(r.hamiltonian);
  for (int k = 0; k < 3; ++k) {
    out.observable_expr[k] = commutative_coefficients(r.observable_expr[k]);
    out.comp[k].total = commutative_coefficients(r.comp[k].total);
    for (const auto& [g, e] : r.comp[k].groups) {
      OperatorExpr lim = commutative_coefficients(e);
      if (!lim.is_zero()) out.comp[k].groups[g] = lim;
    }
  }
  for (const auto& t : r.trace)
    out.trace.push_back(
        {t.label, commutative_coefficients(t.lhs_raw), commutative_coefficients(t.value)});
  return out;
}

/// How the derived velocity acts on single spinor components: the velocity
/// group has the two-fold eigenvalues +-c per axis, and the Theta shift
/// evaluated at alpha -> +-1.
struct SpinorActionReport {
  ScalarSum velocity_plus;   // +c
  ScalarSum velocity_minus;  // -c
  std::array<OperatorExpr, 3> lambda_plus;
  std::array<OperatorExpr, 3> lambda_minus;
};

namespace detail {

inline OperatorExpr substitute_alpha(const OperatorExpr& e, int sign) {
  OperatorExpr out;
  for (const auto& [factors, coeff] : e.terms()) {
    FactorSeq rest;
    int flips = 0;
    for (const Atom& a : factors) {
      if (a.kind == AtomKind::Alpha) {
        if (sign < 0) ++flips;
        continue;
      }
      if (a.kind == AtomKind::Beta)
        throw std::invalid_argument("substitute_alpha: beta atom in a velocity-shift expression");
      rest.push_back(a);
    }
    out.add_term(flips % 2 == 1 ? -coeff : coeff, std::move(rest));
  }
  return out;
}

}  // namespace detail

inline SpinorActionReport spinor_component_action(const RateResult& r) {
  if (r.observable != "x")
    throw std::invalid_argument("spinor_component_action expects a position RateResult");
  SpinorActionReport rep;
  rep.velocity_plus = ScalarSum::symbol(SymConst::LightSpeed);
  rep.velocity_minus = -rep.velocity_plus;
  for (int j = 1; j <= 3; ++j) {
    OperatorExpr lam = r.group(j, TermGroup::Lambda);
    rep.lambda_plus[j - 1] = detail::substitute_alpha(lam, +1);
    rep.lambda_minus[j - 1] = detail::substitute_alpha(lam, -1);
  }
  return rep;
}

/// Published closed form with unknown coefficient slots: fixed structural
/// expressions (unit coefficient) per axis plus the coefficient as printed.
struct TemplateRow {
  std::string label;
  TermGroup group;
  std::array<OperatorExpr, 3> structure;
  ScalarSum published;
};

struct PublishedTemplate {
  std::string name;
  std::vector<TemplateRow> rows;
};

struct DiscrepancyRow {
  std::string term;
  std::string derived;
  std::string paper;
  std::string ratio;  // derived/published when both are single monomials
  bool match = false;
  std::string note;
};

struct DiscrepancyReport {
  std::string name;
  std::vector<DiscrepancyRow> rows;

  bool all_match() const {
    for (const auto& r : rows)
      if (!r.match) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "discrepancy report: " << name << "\n";
    for (const auto& r : rows) {
      os << "  " << r.term << ": derived = " << r.derived << " | published = " << r.paper
         << " | ratio = " << r.ratio << " | " << (r.match ? "MATCH" : "MISMATCH");
      if (!r.note.empty()) os << " (" << r.note << ")";
      os << "\n";
    }
    return os.str();
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "term,derived,paper,ratio,match\n";
    for (const auto& r : rows)
      os << r.term << "," << r.derived << "," << r.paper << "," << r.ratio << ","
         << (r.match ? "true" : "false") << "\n";
    return os.str();
  }
};

namespace detail {

/// lambda with expr == lambda * structure on every axis, when it exists.
inline std::optional<ScalarSum> extract_coefficient(const std::array<OperatorExpr, 3>& derived,
                                                    const std::array<OperatorExpr, 3>& structure) {
  for (int k = 0; k < 3; ++k) {
    if (structure[k].is_zero()) continue;
    const auto& [f0, c0] = *structure[k].terms().begin();
    auto ratio = derived[k].coefficient_of(f0).divided_by_monomial(c0);
    if (!ratio) return std::nullopt;
    // verify the candidate against every axis
    bool ok = true;
    for (int m = 0; m < 3 && ok; ++m)
      ok = derived[m] == (*ratio) * structure[m];
    if (ok) return ratio;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Per-term coefficient comparison of a derived rate against a published
/// template. Structural mismatches become rows, never errors.
inline DiscrepancyReport paper_form_comparison(const RateResult& r,
                                               const PublishedTemplate& t) {
  DiscrepancyReport rep;
  rep.name = t.name;
  for (const TemplateRow& row : t.rows) {
    std::array<OperatorExpr, 3> derived;
    bool derived_zero = true, structure_zero = true;
    for (int k = 0; k < 3; ++k) {
      derived[k] = r.group(k + 1, row.group);
      if (!derived[k].is_zero()) derived_zero = false;
      if (!row.structure[k].is_zero()) structure_zero = false;
    }
    DiscrepancyRow out;
    out.term = row.label;
    out.paper = render(row.published);
    if (structure_zero && derived_zero) {
      out.derived = "0";
      out.ratio = "-";
      out.match = true;
      out.note = "term vanishes identically for the active fields";
    } else if (structure_zero != derived_zero) {
      out.derived = derived_zero ? "0" : render(derived[0] + derived[1] + derived[2]);
      out.ratio = "-";
      out.match = false;
      out.note = structure_zero ? "present in derived result only" : "present in template only";
    } else {
      auto lambda = detail::extract_coefficient(derived, row.structure);
      if (!lambda) {
        out.derived = render(derived[0]);
        out.ratio = "-";
        out.match = false;
        out.note = "structural mismatch against the template";
      } else {
        out.derived = render(*lambda);
        out.match = (*lambda == row.published);
        auto ratio = lambda->divided_by_monomial(row.published);
        out.ratio = ratio ? render(*ratio) : std::string("-");
      }
    }
    rep.rows.push_back(std::move(out));
  }
  return rep;
}

/// Template for the published deformed position rate (velocity plus shift).
inline PublishedTemplate published_position_rate_template(const AlgebraContext& ctx) {
  PublishedTemplate t;
  t.name = "position-rate";
  TemplateRow vel;
  vel.label = "velocity";
  vel.group = TermGroup::Velocity;
  for (int j = 1; j <= 3; ++j) vel.structure[j - 1] = OperatorExpr::atom(Atom::alpha(j));
  vel.published = ScalarSum::symbol(SymConst::LightSpeed);
  t.rows.push_back(vel);

  TemplateRow lam;
  lam.label = "lambda";
  lam.group = TermGroup::Lambda;
  for (int j = 1; j <= 3; ++j) lam.structure[j - 1] = detail::theta_cross_grad(ctx, j);
  // printed as -i e (Theta x grad(alpha.A - Phi)); the sign flips between the
  // two printings of the same quantity, the -ie variant is used here
  lam.published = ScalarSum::coeff(Rational(-1), 1, SymMonomial::of(SymConst::Charge));
  t.rows.push_back(lam);
  return t;
}

/// Template for the published deformed Lorentz force.
inline PublishedTemplate published_momentum_rate_template(const AlgebraContext& ctx) {
  PublishedTemplate t;
  t.name = "momentum-rate";

  TemplateRow el;
  el.label = "electric";
  el.group = TermGroup::Electric;
  for (int j = 1; j <= 3; ++j) {
    std::array<std::int8_t, 3> dj{};
    dj[j - 1] = 1;
    el.structure[j - 1] = canonicalize(-ctx.field.derivative(FieldRef::phi(), dj), ctx);
  }
  el.published = ScalarSum::symbol(SymConst::Charge);
  t.rows.push_back(el);

  TemplateRow mag;
  mag.label = "magnetic";
  mag.group = TermGroup::Magnetic;
  for (int j = 1; j <= 3; ++j) {
    std::array<std::int8_t, 3> dj{};
    dj[j - 1] = 1;
    OperatorExpr vxb;
    for (int i = 1; i <= 3; ++i) {
      std::array<std::int8_t, 3> di{};
      di[i - 1] = 1;
      vxb += ScalarSum::symbol(SymConst::LightSpeed) *
             (OperatorExpr::atom(Atom::alpha(i)) * (ctx.field.derivative(FieldRef::a(i), dj) -
                                                    ctx.field.derivative(FieldRef::a(j), di)));
    }
    mag.structure[j - 1] = canonicalize(vxb, ctx);
  }
  mag.published = ScalarSum::coeff(Rational(1), 0,
                                   SymMonomial::of(SymConst::Charge) *
                                       SymMonomial::of(SymConst::LightSpeed, -1));
  t.rows.push_back(mag);

  TemplateRow eta;
  eta.label = "eta-correction";
  eta.group = TermGroup::EtaCorrection;
  for (int j = 1; j <= 3; ++j)
    eta.structure[j - 1] = canonicalize(-detail::eta_cross_alpha(j), ctx);
  eta.published = ScalarSum::coeff(Rational(1), 0,
                                   SymMonomial::of(SymConst::LightSpeed) *
                                       SymMonomial::of(SymConst::Hbar, -1));
  t.rows.push_back(eta);

  TemplateRow th;
  th.label = "theta-correction";
  th.group = TermGroup::ThetaCorrection;
  for (int j = 1; j <= 3; ++j) {
    std::array<std::int8_t, 3> dj{};
    dj[j - 1] = 1;
    OperatorExpr s;
    for (int i = 1; i <= 3; ++i) {
      std::array<std::int8_t, 3> di{};
      di[i - 1] = 1;
      s += detail::theta_cross_grad(ctx, i) * ctx.field.derivative(FieldRef::a(j), di);
    }
    th.structure[j - 1] = canonicalize(s, ctx);
  }
  th.published = ScalarSum::coeff(Rational(-1), 0,
                                  SymMonomial::of(SymConst::Charge, 2) *
                                      SymMonomial::of(SymConst::LightSpeed, -1) *
                                      SymMonomial::of(SymConst::Hbar, -1));
  t.rows.push_back(th);
  return t;
}

/// Commutative-limit targets: the classical velocity and Lorentz force.
inline PublishedTemplate classical_position_rate_template() {
  PublishedTemplate t;
  t.name = "position-rate-commutative-limit";
  TemplateRow vel;
  vel.label = "velocity";
  vel.group = TermGroup::Velocity;
  for (int j = 1; j <= 3; ++j) vel.structure[j - 1] = OperatorExpr::atom(Atom::alpha(j));
  vel.published = ScalarSum::symbol(SymConst::LightSpeed);
  t.rows.push_back(vel);
  return t;
}

inline PublishedTemplate classical_momentum_rate_template(const AlgebraContext& ctx) {
  PublishedTemplate full = published_momentum_rate_template(ctx);
  PublishedTemplate t;
  t.name = "momentum-rate-commutative-limit";
  for (auto& row : full.rows)
    if (row.label == "electric" || row.label == "magnetic") t.rows.push_back(row);
  return t;
}

/// Exact regression of a rate against a template: the per-axis delta
/// expressions total - sum(published * structure). Empty deltas == pass.
struct LimitCheck {
  bool pass = true;
  std::array<OperatorExpr, 3> delta;
};

inline LimitCheck limits_check(const RateResult& r, const PublishedTemplate& t,
                               const AlgebraContext& ctx) {
  LimitCheck out;
  for (int j = 1; j <= 3; ++j) {
    OperatorExpr expected;
    for (const TemplateRow& row : t.rows) expected += row.published * row.structure[j - 1];
    out.delta[j - 1] = canonicalize(r.total(j) - expected, ctx);
    if (!out.delta[j - 1].is_zero()) out.pass = false;
  }
  return out;
}

}  // namespace ncdirac
