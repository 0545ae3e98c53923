#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncdirac/canonical.hpp"
#include "ncdirac/expr.hpp"

namespace ncdirac {

/// Syntax or symbol error with a 1-based column position.
struct ParseError : std::runtime_error {
  int column;
  ParseError(const std::string& what, int col)
      : std::runtime_error(what + " at column " + std::to_string(col)), column(col) {}
};

namespace detail {

struct Token {
  enum class Kind { Int, Ident, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t value = 0;
  int column = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    cur_ = Token{};
    cur_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= src_.size()) {
      cur_.kind = Token::Kind::End;
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      cur_.kind = Token::Kind::Int;
      cur_.text = src_.substr(start, pos_ - start);
      cur_.value = std::stoll(cur_.text);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_'))
        ++pos_;
      cur_.kind = Token::Kind::Ident;
      cur_.text = src_.substr(start, pos_ - start);
      return;
    }
    cur_.kind = Token::Kind::Punct;
    cur_.text = std::string(1, c);
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  Parser(const std::string& src, const AlgebraContext& ctx) : lex_(src), ctx_(ctx) {}

  OperatorExpr parse() {
    OperatorExpr e = parse_sum();
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError("unexpected trailing input '" + lex_.peek().text + "'",
                       lex_.peek().column);
    return e;
  }

 private:
  OperatorExpr parse_sum() {
    OperatorExpr acc = parse_product();
    while (is_punct("+") || is_punct("-")) {
      bool minus = take().text == "-";
      OperatorExpr rhs = parse_product();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  OperatorExpr parse_product() {
    OperatorExpr acc = parse_factor();
    while (is_punct("*") || is_punct("/")) {
      Token op = take();
      OperatorExpr rhs = parse_factor();
      if (op.text == "*") {
        acc = acc * rhs;
      } else {
        ScalarSum divisor = require_scalar(rhs, op.column);
        auto inv = ScalarSum::one().divided_by_monomial(divisor);
        if (!inv)
          throw ParseError("division requires a nonzero single-monomial scalar divisor",
                           op.column);
        acc = *inv * acc;
      }
    }
    return acc;
  }

  OperatorExpr parse_factor() {
    if (is_punct("-")) {
      take();
      return -parse_factor();
    }
    OperatorExpr base = parse_primary();
    if (is_punct("^")) {
      Token caret = take();
      int sign = 1;
      if (is_punct("-")) {
        take();
        sign = -1;
      }
      Token t = expect(Token::Kind::Int, "integer exponent");
      int k = sign * static_cast<int>(t.value);
      return power(base, k, caret.column);
    }
    return base;
  }

  OperatorExpr power(const OperatorExpr& base, int k, int col) {
    if (k == 0) return OperatorExpr::identity();
    if (k > 0) {
      OperatorExpr acc = base;
      for (int n = 1; n < k; ++n) acc *= base;
      return acc;
    }
    ScalarSum s = require_scalar(base, col);
    auto inv = ScalarSum::one().divided_by_monomial(s);
    if (!inv) throw ParseError("negative power requires a single-monomial scalar", col);
    OperatorExpr acc = OperatorExpr::scalar(*inv);
    OperatorExpr result = acc;
    for (int n = 1; n < -k; ++n) result *= acc;
    return result;
  }

  OperatorExpr parse_primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Int: {
        Token n = take();
        return OperatorExpr::scalar(ScalarSum::of(Rational(n.value)));
      }
      case Token::Kind::Ident:
        return parse_ident();
      case Token::Kind::Punct:
        if (t.text == "(") {
          take();
          OperatorExpr e = parse_sum();
          expect_punct(")");
          return e;
        }
        if (t.text == "[") {
          take();
          OperatorExpr a = parse_sum();
          expect_punct(",");
          OperatorExpr b = parse_sum();
          expect_punct("]");
          return commutator(a, b, ctx_);
        }
        if (t.text == "{") {
          take();
          OperatorExpr a = parse_sum();
          expect_punct(",");
          OperatorExpr b = parse_sum();
          expect_punct("}");
          return anticommutator(a, b, ctx_);
        }
        throw ParseError("unexpected '" + t.text + "'", t.column);
      case Token::Kind::End:
        throw ParseError("unexpected end of input", prev_column_);
    }
    throw ParseError("unexpected input", t.column);
  }

  OperatorExpr parse_ident() {
    Token id = take();
    const std::string& name = id.text;
    if (name == "i") return OperatorExpr::scalar(ScalarSum::imaginary_unit());
    if (name == "beta") return OperatorExpr::atom(Atom::beta());
    if (name == "Phi") return OperatorExpr::atom(Atom::phi_field());
    if (name == "x" || name == "p" || name == "alpha" || name == "A") {
      int axis = expect_index(name);
      if (name == "x") return OperatorExpr::atom(Atom::position(axis));
      if (name == "p") return OperatorExpr::atom(Atom::momentum(axis));
      if (name == "alpha") return OperatorExpr::atom(Atom::alpha(axis));
      return OperatorExpr::atom(Atom::a_field(axis));
    }
    if (name == "d" && is_punct("[")) return parse_partial(id.column);
    if (is_sym_name(name)) return OperatorExpr::scalar(ScalarSum::symbol(sym_from_name(name)));
    throw ParseError("unknown symbol '" + name + "'", id.column);
  }

  OperatorExpr parse_partial(int dcol) {
    int axis = expect_index("d");
    expect_punct("(");
    OperatorExpr inner = parse_sum();
    expect_punct(")");
    // the argument must be exactly one field-like atom
    if (inner.size() != 1) throw ParseError("d[...] expects a single field atom", dcol);
    const auto& [factors, coeff] = *inner.terms().begin();
    if (factors.size() != 1 || !coeff.is_one() || !factors[0].is_field_like())
      throw ParseError("d[...] expects a single field atom", dcol);
    auto raised = raise_partial(factors[0], axis, ctx_);
    if (!raised) return OperatorExpr::zero();  // vanishes beyond the polynomial degree
    return OperatorExpr::atom(*raised);
  }

  int expect_index(const std::string& what) {
    expect_punct("[");
    Token t = expect(Token::Kind::Int, "axis index");
    expect_punct("]");
    if (t.value < 1 || t.value > 3)
      throw ParseError(what + " axis index must be 1..3", t.column);
    return static_cast<int>(t.value);
  }

  ScalarSum require_scalar(const OperatorExpr& e, int col) {
    if (e.is_zero()) return ScalarSum::zero();
    if (e.size() != 1 || !e.terms().begin()->first.empty())
      throw ParseError("operator-valued expression where a scalar is required", col);
    return e.terms().begin()->second;
  }

  bool is_punct(const char* p) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }

  Token take() {
    Token t = lex_.next();
    prev_column_ = t.column;
    return t;
  }

  Token expect(Token::Kind kind, const std::string& what) {
    const Token& t = lex_.peek();
    if (t.kind != kind) {
      if (t.kind == Token::Kind::End)
        throw ParseError("expected " + what + ", found end of input", prev_column_);
      throw ParseError("expected " + what + ", found '" + t.text + "'", t.column);
    }
    return take();
  }

  void expect_punct(const char* p) {
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::Punct || t.text != p) {
      if (t.kind == Token::Kind::End)
        throw ParseError(std::string("expected '") + p + "', found end of input", prev_column_);
      throw ParseError(std::string("expected '") + p + "', found '" + t.text + "'", t.column);
    }
    take();
  }

  Lexer lex_;
  const AlgebraContext& ctx_;
  int prev_column_ = 1;
};

}  // namespace detail

/// Parse the plain-text expression grammar. Commutator/anticommutator
/// brackets are evaluated eagerly under `ctx`.
inline OperatorExpr parse_expr(const std::string& text, const AlgebraContext& ctx) {
  detail::Parser p(text, ctx);
  return p.parse();
}

inline OperatorExpr parse_expr(const std::string& text) {
  AlgebraContext ctx = AlgebraContext::commutative();
  return parse_expr(text, ctx);
}

}  // namespace ncdirac
