#pragma once

#include <optional>

#include "ncdirac/field_spec.hpp"
#include "ncdirac/nc_params.hpp"

namespace ncdirac {

/// Which base commutator table is in force.
///
/// Commutative: [x,x] = [p,p] = 0, [x,p] = i hbar delta (Theta and eta are
/// forced to zero in every base lookup). NCSpace deforms the coordinate
/// sector only; NCPhaseSpace deforms both sectors and uses the published
/// deformed [x,p] coefficient.
enum class AlgebraMode { Commutative, NCSpace, NCPhaseSpace };

struct AlgebraContext {
  AlgebraMode mode = AlgebraMode::Commutative;
  NCParameters nc{};
  ConventionConfig conv{};
  FieldSpec field{};

  static AlgebraContext commutative(FieldSpec f = FieldSpec()) {
    AlgebraContext ctx;
    ctx.mode = AlgebraMode::Commutative;
    ctx.nc = NCParameters::commutative();
    ctx.field = std::move(f);
    return ctx;
  }

  static AlgebraContext nc_phase_space(NCParameters p = NCParameters{},
                                       ConventionConfig c = ConventionConfig::defaults(),
                                       FieldSpec f = FieldSpec()) {
    AlgebraContext ctx;
    ctx.mode = AlgebraMode::NCPhaseSpace;
    ctx.nc = p;
    ctx.conv = c;
    ctx.field = std::move(f);
    return ctx;
  }

  static AlgebraContext nc_space(NCParameters p = NCParameters{},
                                 ConventionConfig c = ConventionConfig::defaults(),
                                 FieldSpec f = FieldSpec()) {
    AlgebraContext ctx = nc_phase_space(p, c, std::move(f));
    ctx.mode = AlgebraMode::NCSpace;
    return ctx;
  }

  bool theta_active() const { return mode != AlgebraMode::Commutative && nc.theta_on(); }
  bool eta_active() const { return mode == AlgebraMode::NCPhaseSpace && nc.eta_on(); }
};

/// Derivative atom constructed against the active field spec: returns
/// nullopt when the derivative order exceeds the field's polynomial degree,
/// i.e. when the atom is identically zero.
inline std::optional<Atom> make_partial(FieldRef ref, std::array<std::int8_t, 3> multi,
                                        const AlgebraContext& ctx) {
  int total = multi[0] + multi[1] + multi[2];
  if (total < 1) throw std::invalid_argument("make_partial: order must be >= 1");
  if (total > ctx.field.degree(ref)) return std::nullopt;
  return Atom::partial(ref, multi);
}

/// One more derivative along `axis` on an existing derivative atom (or a
/// first derivative of a plain field atom).
inline std::optional<Atom> raise_partial(const Atom& a, int axis, const AlgebraContext& ctx) {
  FieldRef ref;
  std::array<std::int8_t, 3> multi{};
  switch (a.kind) {
    case AtomKind::PhiField: ref = FieldRef::phi(); break;
    case AtomKind::AField: ref = FieldRef::a(a.axis); break;
    case AtomKind::PartialField:
      ref = a.field;
      multi = a.deriv;
      break;
    default:
      throw std::invalid_argument("raise_partial: not a field atom");
  }
  multi[axis - 1] = static_cast<std::int8_t>(multi[axis - 1] + 1);
  return make_partial(ref, multi, ctx);
}

}  // namespace ncdirac
