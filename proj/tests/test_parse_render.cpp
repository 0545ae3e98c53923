#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ncdirac/parse.hpp"
#include "ncdirac/render.hpp"

using namespace ncdirac;

TEST_CASE("parse_builds_terms_as_written") {
  OperatorExpr e = parse_expr("c*alpha[1]*p[1]");
  REQUIRE(e.size() == 1);
  const auto& [factors, coeff] = *e.terms().begin();
  CHECK(coeff == ScalarSum::symbol(SymConst::LightSpeed));
  REQUIRE(factors.size() == 2);
  CHECK(factors[0] == Atom::alpha(1));
  CHECK(factors[1] == Atom::momentum(1));
}

TEST_CASE("parse_evaluates_commutator_brackets") {
  OperatorExpr e = parse_expr("[x[1], p[1]]");
  CHECK(e == OperatorExpr::scalar(
                 ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar))));
  OperatorExpr anti = parse_expr("{alpha[1], alpha[2]}");
  CHECK(anti.is_zero());
}

TEST_CASE("parse_reports_column_of_dangling_operator") {
  try {
    parse_expr("x[1]*");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.column == 5);
  }
}

TEST_CASE("parse_rejects_unknown_symbols_with_position") {
  try {
    parse_expr("x[1] + q");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.column == 8);
    CHECK(std::string(err.what()).find("unknown symbol") != std::string::npos);
  }
}

TEST_CASE("parse_handles_division_powers_and_partials") {
  AlgebraContext ctx = AlgebraContext::commutative();
  OperatorExpr shifted = parse_expr("x[1] - Theta/(4*hbar)*p[2]", ctx);
  OperatorExpr expected = OperatorExpr::atom(Atom::position(1));
  expected.add_term(ScalarSum::coeff(Rational(-1, 4), 0,
                                     SymMonomial::of(SymConst::Theta) *
                                         SymMonomial::of(SymConst::Hbar, -1)),
                    {Atom::momentum(2)});
  CHECK(shifted == expected);

  CHECK(parse_expr("hbar^-2*Theta") ==
        OperatorExpr::scalar(ScalarSum::coeff(Rational(1), 0,
                                              SymMonomial::of(SymConst::Theta) *
                                                  SymMonomial::of(SymConst::Hbar, -2))));
  CHECK(parse_expr("x[1]^2") ==
        OperatorExpr::term(ScalarSum::one(), {Atom::position(1), Atom::position(1)}));

  auto datom = make_partial(FieldRef::a(1), {0, 1, 0}, ctx);
  REQUIRE(datom.has_value());
  CHECK(parse_expr("d[2](A[1])", ctx) == OperatorExpr::atom(*datom));
  // beyond the polynomial degree the derivative vanishes at construction
  CHECK(parse_expr("d[1](d[2](A[1]))", ctx).is_zero());
  // dividing by an operator is rejected
  CHECK_THROWS_AS(parse_expr("1/x[1]"), ParseError);
}

TEST_CASE("render_examples") {
  CHECK(render(OperatorExpr::zero()) == "0");
  OperatorExpr ihbar = OperatorExpr::scalar(
      ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar)));
  CHECK(render(ihbar) == "i*hbar");
  OperatorExpr term = OperatorExpr::term(ScalarSum::coeff(Rational(-1, 2), 0,
                                                          SymMonomial::of(SymConst::MagneticB)),
                                         {Atom::position(2)});
  CHECK(render(term) == "-1/2*B*x[2]");
  CHECK(render(term, RenderFormat::Latex).find("\\hat{x}_{2}") != std::string::npos);
}

TEST_CASE("plain_rendering_reparses_to_the_same_expression") {
  AlgebraContext ctx = AlgebraContext::commutative();
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> nterm(1, 4);
  std::uniform_int_distribution<int> nfac(0, 4);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> axis(1, 3);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> ip(0, 3);
  std::uniform_int_distribution<int> sym(0, kNumSymConsts - 1);
  std::uniform_int_distribution<int> symexp(-2, 2);

  for (int iter = 0; iter < 200; ++iter) {
    OperatorExpr e;
    int terms = nterm(rng);
    for (int t = 0; t < terms; ++t) {
      int n = num(rng);
      if (n == 0) n = 2;
      ScalarCoeff c(Rational(n, den(rng)), ip(rng), SymMonomial::unit());
      c.monomial.raise(static_cast<SymConst>(sym(rng)), symexp(rng));
      FactorSeq f;
      int nf = nfac(rng);
      for (int k = 0; k < nf; ++k) {
        switch (kind(rng)) {
          case 0: f.push_back(Atom::position(axis(rng))); break;
          case 1: f.push_back(Atom::momentum(axis(rng))); break;
          case 2: f.push_back(Atom::alpha(axis(rng))); break;
          case 3: f.push_back(Atom::beta()); break;
          default: f.push_back(Atom::a_field(axis(rng))); break;
        }
      }
      e.add_term(ScalarSum::from_coeff(c), std::move(f));
    }
    std::string text = render(e);
    INFO(text);
    CHECK(parse_expr(text, ctx) == e);
    // and rendering a canonical form round-trips as well
    OperatorExpr canon = canonicalize(e, ctx);
    CHECK(parse_expr(render(canon), ctx) == canon);
  }
}

TEST_CASE("multi_entry_coefficients_round_trip") {
  ScalarSum c = ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar)) +
                ScalarSum::coeff(Rational(1, 16), 1,
                                 SymMonomial::of(SymConst::Theta) *
                                     SymMonomial::of(SymConst::Eta) *
                                     SymMonomial::of(SymConst::Hbar, -1));
  OperatorExpr e = OperatorExpr::term(c, {Atom::position(1), Atom::momentum(1)});
  std::string text = render(e);
  INFO(text);
  CHECK(parse_expr(text) == e);
}
