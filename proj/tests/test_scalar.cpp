#include <catch2/catch_amalgamated.hpp>

#include "ncdirac/render.hpp"
#include "ncdirac/scalar.hpp"

using namespace ncdirac;

TEST_CASE("rational_arithmetic_is_exact_and_normalized") {
  Rational a(2, 4);
  CHECK(a == Rational(1, 2));
  CHECK((a + Rational(1, 3)) == Rational(5, 6));
  CHECK((a * Rational(-4, 3)) == Rational(-2, 3));
  CHECK((Rational(7, 3) / Rational(7, 3)).is_one());
  CHECK(Rational(-1, 2).to_string() == "-1/2");
  CHECK(Rational(-3, -6) == Rational(1, 2));
}

TEST_CASE("rational_overflow_throws") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rational(8), std::overflow_error);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("imaginary_unit_is_an_exact_fourth_root") {
  ScalarSum i = ScalarSum::imaginary_unit();
  CHECK(i * i == ScalarSum::of(Rational(-1)));
  CHECK(i * i * i * i == ScalarSum::one());
  // i^3 normalizes to -i
  CHECK(ScalarSum::coeff(Rational(1), 3, SymMonomial::unit()) == -(i));
}

TEST_CASE("scalar_sum_merges_like_monomials") {
  ScalarSum hbar = ScalarSum::symbol(SymConst::Hbar);
  ScalarSum s = hbar + hbar;
  CHECK(s == ScalarSum::of(Rational(2)) * hbar);
  CHECK((s - s).is_zero());
  ScalarSum mixed = hbar + ScalarSum::imaginary_unit() * hbar;
  CHECK(mixed.size() == 2);  // real and imaginary parts stay separate entries
}

TEST_CASE("zero_is_canonical") {
  ScalarSum z = ScalarSum::symbol(SymConst::Theta) - ScalarSum::symbol(SymConst::Theta);
  CHECK(z.is_zero());
  CHECK(z == ScalarSum::zero());
  CHECK(render(z) == "0");
}

TEST_CASE("substitution_kills_positive_powers") {
  ScalarSum s = ScalarSum::symbol(SymConst::Hbar) +
                ScalarSum::symbol(SymConst::Theta) * ScalarSum::symbol(SymConst::Eta);
  ScalarSum lim = s.substituted_zero({SymConst::Theta, SymConst::Eta});
  CHECK(lim == ScalarSum::symbol(SymConst::Hbar));
}

TEST_CASE("monomial_division") {
  ScalarSum num = ScalarSum::coeff(Rational(1, 4), 1,
                                   SymMonomial::of(SymConst::Theta) *
                                       SymMonomial::of(SymConst::Hbar, -1));
  ScalarSum den = ScalarSum::coeff(Rational(1, 2), 1, SymMonomial::of(SymConst::Hbar));
  auto q = num.divided_by_monomial(den);
  REQUIRE(q.has_value());
  CHECK(*q == ScalarSum::coeff(Rational(1, 2), 0,
                               SymMonomial::of(SymConst::Theta) *
                                   SymMonomial::of(SymConst::Hbar, -2)));
  ScalarSum sum = den + ScalarSum::one();
  CHECK_FALSE(num.divided_by_monomial(sum).has_value());
}

TEST_CASE("numeric_evaluation_binds_constants") {
  ScalarSum s = ScalarSum::coeff(Rational(3, 2), 1, SymMonomial::of(SymConst::Hbar, -1));
  std::map<std::string, double> bind{{"hbar", 2.0}};
  auto v = s.eval(bind);
  CHECK(v.real() == 0.0);
  CHECK(v.imag() == Catch::Approx(0.75));
  CHECK_THROWS_AS(s.eval({}), std::invalid_argument);
}
