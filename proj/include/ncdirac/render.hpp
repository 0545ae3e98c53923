#pragma once

#include <string>

#include "ncdirac/expr.hpp"

namespace ncdirac {

enum class RenderFormat { Plain, Latex };

namespace detail {

inline std::string rational_plain(const Rational& r) { return r.to_string(); }

inline std::string rational_latex(const Rational& r) {
  if (r.den() == 1) return std::to_string(r.num());
  std::string num = std::to_string(r.num() < 0 ? -r.num() : r.num());
  std::string s = r.num() < 0 ? "-" : "";
  return s + "\\tfrac{" + num + "}{" + std::to_string(r.den()) + "}";
}

/// One scalar monomial, without a leading sign ("1" when trivial).
inline std::string coeff_body(const ScalarCoeff& c, RenderFormat fmt) {
  Rational mag = c.rational.is_negative() ? -c.rational : c.rational;
  std::string out;
  bool trivial_mag = mag.is_one();
  if (!trivial_mag) out = fmt == RenderFormat::Plain ? rational_plain(mag) : rational_latex(mag);
  auto append = [&](const std::string& piece) {
    if (!out.empty()) out += fmt == RenderFormat::Plain ? "*" : " ";
    out += piece;
  };
  if (c.i_power == 1) append("i");
  for (int k = 0; k < kNumSymConsts; ++k) {
    int ex = c.monomial.exp[k];
    if (ex == 0) continue;
    std::string base = fmt == RenderFormat::Plain ? kSymNames[k] : kSymLatex[k];
    if (ex == 1)
      append(base);
    else if (fmt == RenderFormat::Plain)
      append(base + "^" + std::to_string(ex));
    else
      append(base + "^{" + std::to_string(ex) + "}");
  }
  if (out.empty()) out = "1";
  return out;
}

inline std::string atom_latex(const Atom& a) {
  switch (a.kind) {
    case AtomKind::Position: return "\\hat{x}_{" + std::to_string(a.axis) + "}";
    case AtomKind::Momentum: return "\\hat{p}_{" + std::to_string(a.axis) + "}";
    case AtomKind::Alpha: return "\\alpha_{" + std::to_string(a.axis) + "}";
    case AtomKind::Beta: return "\\beta";
    case AtomKind::PhiField: return "\\Phi";
    case AtomKind::AField: return "A_{" + std::to_string(a.axis) + "}";
    case AtomKind::PartialField: {
      std::string s;
      for (int ax = 1; ax <= 3; ++ax)
        for (int k = 0; k < a.deriv[ax - 1]; ++k) s += "\\partial_{" + std::to_string(ax) + "}";
      s += a.field.is_phi() ? "\\Phi" : ("A_{" + std::to_string(a.field.axis()) + "}");
      return s;
    }
  }
  return "?";
}

inline std::string factors_string(const FactorSeq& f, RenderFormat fmt) {
  std::string out;
  for (const Atom& a : f) {
    if (!out.empty()) out += fmt == RenderFormat::Plain ? "*" : " ";
    out += fmt == RenderFormat::Plain ? a.name() : atom_latex(a);
  }
  return out;
}

}  // namespace detail

/// Deterministic rendering; the plain format re-parses to the same
/// expression (see parse.hpp).
inline std::string render(const OperatorExpr& e, RenderFormat fmt = RenderFormat::Plain) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [factors, coeff] : e.terms()) {
    auto entries = coeff.coeffs();
    std::string fs = detail::factors_string(factors, fmt);
    std::string body;
    bool negative = false;
    if (entries.size() == 1) {
      negative = entries[0].rational.is_negative();
      body = detail::coeff_body(entries[0], fmt);
      if (!fs.empty()) {
        if (body == "1")
          body = fs;
        else
          body += (fmt == RenderFormat::Plain ? "*" : " ") + fs;
      }
    } else {
      // parenthesized exact sum as one coefficient
      std::string inner;
      bool inner_first = true;
      for (const auto& c : entries) {
        bool neg = c.rational.is_negative();
        if (inner_first)
          inner += neg ? "-" : "";
        else
          inner += neg ? " - " : " + ";
        inner += detail::coeff_body(c, fmt);
        inner_first = false;
      }
      body = "(" + inner + ")";
      if (!fs.empty()) body += (fmt == RenderFormat::Plain ? "*" : " ") + fs;
    }
    if (first)
      out += (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

inline std::string render(const ScalarSum& s, RenderFormat fmt = RenderFormat::Plain) {
  return render(OperatorExpr::scalar(s), fmt);
}

}  // namespace ncdirac
