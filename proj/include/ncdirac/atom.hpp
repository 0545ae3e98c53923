#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ncdirac {

/// Which field a derivative atom differentiates: the scalar potential or one
/// component of the vector potential.
struct FieldRef {
  // 0 = Phi, 1..3 = A_i
  int code = 0;

  auto operator<=>(const FieldRef&) const = default;

  static FieldRef phi() { return FieldRef{0}; }
  static FieldRef a(int axis) { return FieldRef{axis}; }
  bool is_phi() const { return code == 0; }
  int axis() const { return code; }  // valid when !is_phi()
};

enum class AtomKind : std::uint8_t {
  Position,      // x_i
  Momentum,      // p_i
  PhiField,      // Phi(x)
  AField,        // A_i(x)
  PartialField,  // formal partial derivative of a field
  Alpha,         // Dirac alpha_i
  Beta,          // Dirac beta
};

/// One operator factor. Immutable value type; ordering below defines the
/// canonical factor order used throughout the kernel.
struct Atom {
  AtomKind kind = AtomKind::Beta;
  int axis = 0;                       // 1..3 for Position/Momentum/AField/Alpha
  FieldRef field{};                   // for PartialField
  std::array<std::int8_t, 3> deriv{}; // derivative multi-index, total >= 1

  static Atom position(int i) { return make(AtomKind::Position, i); }
  static Atom momentum(int i) { return make(AtomKind::Momentum, i); }
  static Atom alpha(int i) { return make(AtomKind::Alpha, i); }
  static Atom beta() { return Atom{AtomKind::Beta, 0, {}, {}}; }
  static Atom phi_field() { return Atom{AtomKind::PhiField, 0, {}, {}}; }
  static Atom a_field(int i) { return make(AtomKind::AField, i); }

  /// Raw derivative atom; degree screening against the active field spec
  /// happens in make_partial (context.hpp).
  static Atom partial(FieldRef f, std::array<std::int8_t, 3> multi) {
    int total = multi[0] + multi[1] + multi[2];
    if (total < 1) throw std::invalid_argument("partial atom needs derivative order >= 1");
    return Atom{AtomKind::PartialField, 0, f, multi};
  }

  int deriv_order() const { return deriv[0] + deriv[1] + deriv[2]; }

  bool is_dirac() const { return kind == AtomKind::Alpha || kind == AtomKind::Beta; }
  bool is_field_like() const {
    return kind == AtomKind::PhiField || kind == AtomKind::AField ||
           kind == AtomKind::PartialField;
  }

  /// Canonical order: x (by axis) < p (by axis) < Phi < A (by axis)
  /// < derivatives (by field, then multi-index) < alpha (by axis) < beta.
  std::tuple<int, int, int, int, int, int> rank() const {
    switch (kind) {
      case AtomKind::Position: return {0, axis, 0, 0, 0, 0};
      case AtomKind::Momentum: return {1, axis, 0, 0, 0, 0};
      case AtomKind::PhiField: return {2, 0, 0, 0, 0, 0};
      case AtomKind::AField:   return {3, axis, 0, 0, 0, 0};
      case AtomKind::PartialField:
        return {4, field.code, deriv[0], deriv[1], deriv[2], 0};
      case AtomKind::Alpha:    return {5, axis, 0, 0, 0, 0};
      case AtomKind::Beta:     return {6, 0, 0, 0, 0, 0};
    }
    throw std::logic_error("unreachable atom kind");
  }

  friend bool operator==(const Atom& a, const Atom& b) { return a.rank() == b.rank(); }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) { return a.rank() < b.rank(); }

  std::string name() const {
    switch (kind) {
      case AtomKind::Position: return "x[" + std::to_string(axis) + "]";
      case AtomKind::Momentum: return "p[" + std::to_string(axis) + "]";
      case AtomKind::PhiField: return "Phi";
      case AtomKind::AField:   return "A[" + std::to_string(axis) + "]";
      case AtomKind::Alpha:    return "alpha[" + std::to_string(axis) + "]";
      case AtomKind::Beta:     return "beta";
      case AtomKind::PartialField: {
        std::string s = field.is_phi() ? "Phi" : ("A[" + std::to_string(field.axis()) + "]");
        for (int ax = 1; ax <= 3; ++ax)
          for (int k = 0; k < deriv[ax - 1]; ++k) s = "d[" + std::to_string(ax) + "](" + s + ")";
        return s;
      }
    }
    throw std::logic_error("unreachable atom kind");
  }

 private:
  static Atom make(AtomKind k, int i) {
    if (i < 1 || i > 3) throw std::invalid_argument("atom axis must be 1..3");
    return Atom{k, i, {}, {}};
  }
};

using FactorSeq = std::vector<Atom>;

}  // namespace ncdirac
