#include "doctest.h"
#include "kstab/parser.hpp"
#include "kstab/polynomial.hpp"
#include "oracles.hpp"

using namespace kstab;

TEST_CASE("rationals normalize and print in lowest terms") {
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("-6/3")) == "-2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("monomial orders") {
  const Monomial a = Monomial::variable(0, 2);                        // x^2
  const Monomial b = Monomial::variable(1) * Monomial::variable(2);  // y z
  const Monomial c = Monomial::variable(0) * Monomial::variable(2, 2);
  CHECK(MonomialOrder::lex(3).greater(a, b));
  CHECK(MonomialOrder::grevlex(3).greater(a, b));
  // x z^2 against y^3: lex prefers x, grevlex penalizes the last variable
  const Monomial y3 = Monomial::variable(1, 3);
  CHECK(MonomialOrder::lex(3).greater(c, y3));
  CHECK(MonomialOrder::grevlex(3).greater(y3, c));
  const auto elim = MonomialOrder::block_elimination(3, {{2}});
  CHECK(elim.greater(Monomial::variable(2), Monomial::variable(0, 5)));
  CHECK(MonomialOrder::weighted({0, 3, 0}).greater(Monomial::variable(1), Monomial::variable(0, 2)));
}

TEST_CASE("polynomial arithmetic identities on random inputs") {
  auto R = Ring::standard({"x", "y", "z"});
  oracle::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial f = oracle::random_polynomial(rng, R, 4, 0, 3);
    const Polynomial g = oracle::random_polynomial(rng, R, 3, 0, 3);
    const Polynomial h = oracle::random_polynomial(rng, R, 3, 0, 2);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    CHECK((f - f).is_zero());
    CHECK(f.pow(2) == f * f);
    CHECK((f * g).total_degree() == f.total_degree() + g.total_degree());
    CHECK((f * g).derivative(0) == f.derivative(0) * g + f * g.derivative(0));
  }
}

TEST_CASE("parser round trip on random polynomials") {
  auto R = Ring::standard({"x0", "x1", "x2", "u"});
  oracle::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial f = oracle::random_polynomial(rng, R, 5, 0, 4);
    if (trial % 3 == 0) f = f.scaled(Rational(1, 1 + trial % 7));
    const std::string text = f.to_string();
    CHECK_MESSAGE(parse_polynomial(text, R) == f, text);
  }
}

TEST_CASE("parser grammar") {
  auto R = Ring::standard({"x", "y"});
  const Polynomial x = Polynomial::variable(R, "x");
  const Polynomial y = Polynomial::variable(R, "y");
  CHECK(parse_polynomial("(x + y)^2", R) == x * x + Polynomial::constant(R, 2) * x * y + y * y);
  CHECK(parse_polynomial("-x + 3/6*y", R) == -x + y.scaled(Rational(1, 2)));
  CHECK(parse_polynomial(" x * y ^ 3 ", R) == x * y.pow(3));
  CHECK(parse_polynomial("0", R).is_zero());
  const Polynomial cube = parse_polynomial("(x+y)^3", R);
  REQUIRE(cube.size() == 4);
  for (const auto& t : cube.terms()) CHECK(t.coef == (t.mono.exp[0] == 0 || t.mono.exp[0] == 3 ? 1 : 3));
}

TEST_CASE("parse errors carry line and column") {
  auto R = Ring::standard({"x0", "x1"});
  auto column_of = [&](const std::string& text) {
    try {
      parse_polynomial(text, R);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(-1L, -1L);
  };
  CHECK(column_of("x0 + ") == std::make_pair(1L, 6L));
  CHECK(column_of("x0 + w") == std::make_pair(1L, 6L));
  CHECK(column_of("x0^") == std::make_pair(1L, 4L));
  CHECK(column_of("x0 +\n  x1^65") == std::make_pair(2L, 6L));
  CHECK(column_of("1/0") == std::make_pair(1L, 3L));
  CHECK(column_of("") == std::make_pair(1L, 1L));
  CHECK_THROWS_AS(parse_polynomial("(x0", R), ParseError);
}

TEST_CASE("substitution is a ring homomorphism") {
  auto R = Ring::standard({"x", "y"});
  auto T = Ring::standard({"x", "y", "t"});
  const Polynomial t = Polynomial::variable(T, "t");
  const std::map<std::string, Polynomial> phi{{"x", t * Polynomial::variable(T, "x")}};
  oracle::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial f = oracle::random_polynomial(rng, R, 3, 0, 3);
    const Polynomial g = oracle::random_polynomial(rng, R, 3, 0, 3);
    CHECK(substitute(f * g, phi, T) == substitute(f, phi, T) * substitute(g, phi, T));
    CHECK(substitute(f + g, phi, T) == substitute(f, phi, T) + substitute(g, phi, T));
  }
}

TEST_CASE("bigraded product ring") {
  auto R = Ring::standard({"x0", "x1", "x2"})->times_projective_line();
  CHECK(R->size() == 5);
  CHECK(R->grading_rank() == 2);
  CHECK(R->require_block("y").variables.size() == 2);
  CHECK(R->degree_of(Monomial::variable(3)) == DegreeVector{0, 1});
  CHECK(R->degree_of(Monomial::variable(0, 2)) == DegreeVector{2, 0});
}
