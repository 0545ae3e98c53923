#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ncdirac/canonical.hpp"
#include "ncdirac/render.hpp"

using namespace ncdirac;

namespace {

ScalarSum ihbar() { return ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar)); }

struct ExprGen {
  std::mt19937 rng;
  bool with_fields;
  explicit ExprGen(unsigned seed, bool fields) : rng(seed), with_fields(fields) {}

  Atom random_atom() {
    std::uniform_int_distribution<int> kind(0, with_fields ? 5 : 3);
    std::uniform_int_distribution<int> axis(1, 3);
    switch (kind(rng)) {
      case 0: return Atom::position(axis(rng));
      case 1: return Atom::momentum(axis(rng));
      case 2: return Atom::alpha(axis(rng));
      case 3: return Atom::beta();
      case 4: return Atom::phi_field();
      default: return Atom::a_field(axis(rng));
    }
  }

  ScalarSum random_coeff() {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> ipow(0, 3);
    std::uniform_int_distribution<int> sym(0, 3);
    int n = num(rng);
    if (n == 0) n = 1;
    ScalarCoeff c(Rational(n, den(rng)), ipow(rng), SymMonomial::unit());
    if (sym(rng) == 0) c.monomial.raise(SymConst::Hbar, 1);
    return ScalarSum::from_coeff(c);
  }

  OperatorExpr random_term(int max_factors) {
    std::uniform_int_distribution<int> len(0, max_factors);
    FactorSeq f;
    int n = len(rng);
    for (int k = 0; k < n; ++k) f.push_back(random_atom());
    return OperatorExpr::term(random_coeff(), std::move(f));
  }

  OperatorExpr random_expr(int max_terms, int max_factors) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    OperatorExpr e;
    int n = terms(rng);
    for (int k = 0; k < n; ++k) e += random_term(max_factors);
    return e;
  }
};

}  // namespace

TEST_CASE("canonicalize_reorders_momentum_past_position") {
  AlgebraContext ctx = AlgebraContext::commutative();
  OperatorExpr e = OperatorExpr::atom(Atom::momentum(1)) * OperatorExpr::atom(Atom::position(1));
  OperatorExpr canon = canonicalize(e, ctx);
  OperatorExpr expected =
      OperatorExpr::term(ScalarSum::one(), {Atom::position(1), Atom::momentum(1)}) -
      OperatorExpr::scalar(ihbar());
  CHECK(canon == expected);
}

TEST_CASE("canonicalize_reduces_alpha_squared_to_unity") {
  AlgebraContext ctx = AlgebraContext::commutative();
  OperatorExpr e = OperatorExpr::atom(Atom::alpha(1)) * OperatorExpr::atom(Atom::alpha(1));
  CHECK(canonicalize(e, ctx) == OperatorExpr::identity());
  OperatorExpr b2 = OperatorExpr::atom(Atom::beta()) * OperatorExpr::atom(Atom::beta());
  CHECK(canonicalize(b2, ctx) == OperatorExpr::identity());
}

TEST_CASE("canonicalize_is_idempotent_on_random_expressions") {
  AlgebraContext ctx = AlgebraContext::commutative();
  ExprGen gen(20240811, true);
  for (int iter = 0; iter < 200; ++iter) {
    OperatorExpr e = gen.random_expr(3, 6);
    OperatorExpr once = canonicalize(e, ctx);
    CHECK(canonicalize(once, ctx) == once);
  }
}

TEST_CASE("canonicalize_is_a_congruence_for_products") {
  AlgebraContext ctx = AlgebraContext::commutative();
  ExprGen gen(7, true);
  for (int iter = 0; iter < 100; ++iter) {
    OperatorExpr a = gen.random_expr(2, 4);
    OperatorExpr b = gen.random_expr(2, 4);
    CHECK(canonicalize(a * b, ctx) ==
          canonicalize(canonicalize(a, ctx) * canonicalize(b, ctx), ctx));
  }
}

TEST_CASE("commutator_position_momentum_is_i_hbar") {
  AlgebraContext ctx = AlgebraContext::commutative();
  OperatorExpr c = commutator(OperatorExpr::atom(Atom::position(1)),
                              OperatorExpr::atom(Atom::momentum(1)), ctx);
  CHECK(c == OperatorExpr::scalar(ihbar()));
  CHECK(render(c) == "i*hbar");
}

TEST_CASE("commutator_alpha_dot_p_with_position_gives_velocity_direction") {
  AlgebraContext ctx = AlgebraContext::commutative();
  OperatorExpr alpha_dot_p;
  for (int i = 1; i <= 3; ++i)
    alpha_dot_p += OperatorExpr::atom(Atom::alpha(i)) * OperatorExpr::atom(Atom::momentum(i));
  for (int j = 1; j <= 3; ++j) {
    OperatorExpr c = commutator(alpha_dot_p, OperatorExpr::atom(Atom::position(j)), ctx);
    OperatorExpr expected = OperatorExpr::term(-ihbar(), {Atom::alpha(j)});
    CHECK(c == expected);
  }
}

TEST_CASE("commutator_of_anything_with_itself_vanishes") {
  AlgebraContext ctx = AlgebraContext::commutative();
  ExprGen gen(99, true);
  for (int iter = 0; iter < 50; ++iter) {
    OperatorExpr e = gen.random_expr(3, 4);
    CHECK(commutator(e, e, ctx).is_zero());
  }
}

TEST_CASE("anticommutation_relations_of_the_dirac_matrices") {
  AlgebraContext ctx = AlgebraContext::commutative();
  OperatorExpr a1 = OperatorExpr::atom(Atom::alpha(1));
  OperatorExpr a2 = OperatorExpr::atom(Atom::alpha(2));
  OperatorExpr b = OperatorExpr::atom(Atom::beta());
  CHECK(anticommutator(a1, a2, ctx).is_zero());
  CHECK(anticommutator(a1, b, ctx).is_zero());
  CHECK(anticommutator(a1, a1, ctx) == OperatorExpr::scalar(ScalarSum::of(Rational(2))));
}

TEST_CASE("commutator_bilinearity_and_antisymmetry") {
  AlgebraContext ctx = AlgebraContext::commutative();
  ExprGen gen(3, true);
  for (int iter = 0; iter < 60; ++iter) {
    OperatorExpr a = gen.random_expr(2, 3);
    OperatorExpr b = gen.random_expr(2, 3);
    OperatorExpr c = gen.random_expr(2, 3);
    CHECK(commutator(a + b, c, ctx) == commutator(a, c, ctx) + commutator(b, c, ctx));
    CHECK(commutator(a, b, ctx) == -commutator(b, a, ctx));
  }
}

TEST_CASE("jacobi_identity_exhaustive_over_atom_pairs_and_random_triples") {
  for (AlgebraMode mode : {AlgebraMode::Commutative, AlgebraMode::NCPhaseSpace}) {
    AlgebraContext ctx;
    ctx.mode = mode;
    if (mode != AlgebraMode::Commutative) ctx.nc = NCParameters{};  // Theta = eta = 0.01
    std::vector<Atom> atoms;
    for (int i = 1; i <= 3; ++i) {
      atoms.push_back(Atom::position(i));
      atoms.push_back(Atom::momentum(i));
      atoms.push_back(Atom::alpha(i));
    }
    atoms.push_back(Atom::beta());
    // exhaustive over pairs (with the third fixed), random over longer triples
    for (const Atom& a : atoms)
      for (const Atom& b : atoms) {
        OperatorExpr ea = OperatorExpr::atom(a), eb = OperatorExpr::atom(b);
        OperatorExpr ec = OperatorExpr::atom(Atom::position(1)) *
                          OperatorExpr::atom(Atom::momentum(2));
        OperatorExpr jac = commutator(ea, commutator(eb, ec, ctx), ctx) +
                           commutator(eb, commutator(ec, ea, ctx), ctx) +
                           commutator(ec, commutator(ea, eb, ctx), ctx);
        CHECK(jac.is_zero());
      }
    ExprGen gen(17, false);
    for (int iter = 0; iter < 40; ++iter) {
      OperatorExpr a = gen.random_expr(1, 4);
      OperatorExpr b = gen.random_expr(1, 4);
      OperatorExpr c = gen.random_expr(1, 4);
      OperatorExpr jac = commutator(a, commutator(b, c, ctx), ctx) +
                         commutator(b, commutator(c, a, ctx), ctx) +
                         commutator(c, commutator(a, b, ctx), ctx);
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("leibniz_rule_for_the_commutator") {
  AlgebraContext ctx = AlgebraContext::commutative();
  ExprGen gen(23, true);
  for (int iter = 0; iter < 60; ++iter) {
    OperatorExpr a = gen.random_expr(1, 3);
    OperatorExpr b = gen.random_expr(1, 3);
    OperatorExpr c = gen.random_expr(1, 3);
    OperatorExpr lhs = commutator(a * b, c, ctx);
    OperatorExpr rhs = canonicalize(commutator(a, c, ctx) * b + a * commutator(b, c, ctx), ctx);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("dirac_products_close_on_the_sixteen_element_basis") {
  AlgebraContext ctx = AlgebraContext::commutative();
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> len(1, 6);
  for (int iter = 0; iter < 300; ++iter) {
    FactorSeq f;
    int n = len(rng);
    for (int k = 0; k < n; ++k) {
      int w = pick(rng);
      f.push_back(w == 3 ? Atom::beta() : Atom::alpha(w + 1));
    }
    OperatorExpr canon = canonicalize(OperatorExpr::term(ScalarSum::one(), f), ctx);
    REQUIRE(canon.size() == 1);
    const auto& [factors, coeff] = *canon.terms().begin();
    // coefficient is +-1, factors are strictly increasing Dirac atoms
    CHECK((coeff == ScalarSum::one() || coeff == ScalarSum::of(Rational(-1))));
    CHECK(factors.size() <= 4);
    for (std::size_t k = 0; k + 1 < factors.size(); ++k) CHECK(factors[k] < factors[k + 1]);
    for (const Atom& a : factors) CHECK(a.is_dirac());
  }
}

TEST_CASE("deformed_base_relations_in_the_nc_modes") {
  AlgebraContext nc = AlgebraContext::nc_phase_space();
  OperatorExpr x1 = OperatorExpr::atom(Atom::position(1));
  OperatorExpr x2 = OperatorExpr::atom(Atom::position(2));
  OperatorExpr p1 = OperatorExpr::atom(Atom::momentum(1));
  OperatorExpr p2 = OperatorExpr::atom(Atom::momentum(2));

  // [x1, x2] = (i/2) Theta under the default embedding
  CHECK(commutator(x1, x2, nc) ==
        OperatorExpr::scalar(ScalarSum::coeff(Rational(1, 2), 1,
                                              SymMonomial::of(SymConst::Theta))));
  CHECK(commutator(p1, p2, nc) ==
        OperatorExpr::scalar(ScalarSum::coeff(Rational(1, 2), 1,
                                              SymMonomial::of(SymConst::Eta))));
  // published deformed [x, p] coefficient
  ScalarSum expected = ihbar() + ScalarSum::coeff(Rational(1, 4), 1,
                                                  SymMonomial::of(SymConst::Theta) *
                                                      SymMonomial::of(SymConst::Eta) *
                                                      SymMonomial::of(SymConst::Hbar, -1));
  CHECK(commutator(x1, p1, nc) == OperatorExpr::scalar(expected));
  CHECK(commutator(x1, p2, nc).is_zero());

  // space-only mode leaves momenta and the cross sector canonical
  AlgebraContext ncs = AlgebraContext::nc_space();
  CHECK(commutator(p1, p2, ncs).is_zero());
  CHECK(commutator(x1, p1, ncs) == OperatorExpr::scalar(ihbar()));

  // commutative mode forces both deformations off
  AlgebraContext comm = AlgebraContext::commutative();
  CHECK(commutator(x1, x2, comm).is_zero());
}

TEST_CASE("field_momentum_pairs_have_no_rule_in_the_deformed_modes") {
  AlgebraContext nc = AlgebraContext::nc_phase_space();
  OperatorExpr a1 = OperatorExpr::atom(Atom::a_field(1));
  OperatorExpr p1 = OperatorExpr::atom(Atom::momentum(1));
  CHECK_THROWS_AS(commutator(a1, p1, nc), UnknownAtomPair);
}

TEST_CASE("field_momentum_commutator_yields_derivative_atom") {
  AlgebraContext ctx = AlgebraContext::commutative();  // symmetric gauge + uniform E
  OperatorExpr a1 = OperatorExpr::atom(Atom::a_field(1));
  OperatorExpr p2 = OperatorExpr::atom(Atom::momentum(2));
  OperatorExpr c = commutator(a1, p2, ctx);
  auto datom = make_partial(FieldRef::a(1), {0, 1, 0}, ctx);
  REQUIRE(datom.has_value());
  CHECK(c == OperatorExpr::term(ihbar(), {*datom}));
  // resolving the derivative against the symmetric gauge gives -B/2
  CHECK(resolve_fields(c, ctx) ==
        OperatorExpr::scalar(ScalarSum::coeff(Rational(-1, 2), 1,
                                              SymMonomial::of(SymConst::Hbar) *
                                                  SymMonomial::of(SymConst::MagneticB))));
  // a second derivative of a degree-1 field vanishes at construction
  OperatorExpr dd = commutator(OperatorExpr::atom(*datom), p2, ctx);
  CHECK(dd.is_zero());
}

TEST_CASE("differentiate_examples") {
  AlgebraContext ctx = AlgebraContext::commutative();
  // d_2 A_1 in the symmetric gauge is -B/2
  OperatorExpr da = differentiate(OperatorExpr::atom(Atom::a_field(1)), 2, ctx);
  CHECK(da == OperatorExpr::scalar(ScalarSum::coeff(Rational(-1, 2), 0,
                                                    SymMonomial::of(SymConst::MagneticB))));
  // d_1 Phi with the uniform field is -E1
  OperatorExpr dphi = differentiate(OperatorExpr::atom(Atom::phi_field()), 1, ctx);
  CHECK(dphi == OperatorExpr::scalar(ScalarSum::coeff(Rational(-1), 0,
                                                      SymMonomial::of(SymConst::ElectricE1))));
  // derivative of a constant is zero
  CHECK(differentiate(OperatorExpr::identity(), 3, ctx).is_zero());
  // momenta are rejected
  CHECK_THROWS_AS(differentiate(OperatorExpr::atom(Atom::momentum(1)), 1, ctx),
                  std::invalid_argument);
}
