#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ncdirac {

/// Named symbolic constants carried exactly through every derivation.
enum class SymConst : int {
  Hbar = 0,
  LightSpeed,
  Charge,
  Mass,
  Theta,
  Eta,
  MagneticB,
  ElectricE1,
  ElectricE2,
  ElectricE3,
};

inline constexpr int kNumSymConsts = 10;

inline constexpr std::array<const char*, kNumSymConsts> kSymNames = {
    "hbar", "c", "e", "m", "Theta", "eta", "B", "E1", "E2", "E3"};

inline constexpr std::array<const char*, kNumSymConsts> kSymLatex = {
    "\\hbar", "c", "e", "m", "\\Theta", "\\eta", "B", "E_{1}", "E_{2}", "E_{3}"};

inline const char* sym_name(SymConst s) { return kSymNames[static_cast<int>(s)]; }
inline const char* sym_latex(SymConst s) { return kSymLatex[static_cast<int>(s)]; }

inline SymConst sym_from_name(const std::string& name) {
  for (int k = 0; k < kNumSymConsts; ++k)
    if (name == kSymNames[k]) return static_cast<SymConst>(k);
  throw std::invalid_argument("unknown symbolic constant: " + name);
}

inline bool is_sym_name(const std::string& name) {
  for (int k = 0; k < kNumSymConsts; ++k)
    if (name == kSymNames[k]) return true;
  return false;
}

/// Power product of symbolic constants with integer (possibly negative)
/// exponents, e.g. Theta * eta * hbar^-2.
struct SymMonomial {
  std::array<std::int8_t, kNumSymConsts> exp{};

  auto operator<=>(const SymMonomial&) const = default;

  bool is_unit() const {
    for (auto e : exp)
      if (e != 0) return false;
    return true;
  }

  int degree_of(SymConst s) const { return exp[static_cast<int>(s)]; }

  SymMonomial& raise(SymConst s, int by) {
    int v = exp[static_cast<int>(s)] + by;
    if (v > 127 || v < -127) throw std::overflow_error("SymMonomial exponent overflow");
    exp[static_cast<int>(s)] = static_cast<std::int8_t>(v);
    return *this;
  }

  friend SymMonomial operator*(const SymMonomial& a, const SymMonomial& b) {
    SymMonomial r = a;
    for (int k = 0; k < kNumSymConsts; ++k) r.raise(static_cast<SymConst>(k), b.exp[k]);
    return r;
  }

  SymMonomial inverse() const {
    SymMonomial r;
    for (int k = 0; k < kNumSymConsts; ++k) r.exp[k] = static_cast<std::int8_t>(-exp[k]);
    return r;
  }

  static SymMonomial unit() { return SymMonomial{}; }
  static SymMonomial of(SymConst s, int power = 1) {
    SymMonomial r;
    r.raise(s, power);
    return r;
  }
};

}  // namespace ncdirac
