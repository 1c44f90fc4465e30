#include <algorithm>

#include "doctest.h"
#include "kstab/groebner.hpp"
#include "kstab/ideal.hpp"
#include "oracles.hpp"

using namespace kstab;

namespace {

std::vector<Polynomial> random_system(oracle::Rng& rng, const RingPtr& R, int count) {
  std::vector<Polynomial> gens;
  for (int i = 0; i < count; ++i) gens.push_back(oracle::random_polynomial(rng, R, 3, 1, 3));
  return gens;
}

}  // namespace

TEST_CASE("reduced bases satisfy Buchberger's criterion") {
  auto R = Ring::standard({"x", "y", "z"});
  oracle::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const auto gens = random_system(rng, R, 2 + trial % 2);
    for (const auto& order : {MonomialOrder::grevlex(3), MonomialOrder::lex(3)}) {
      const auto G = reduced_groebner(gens, order);
      CHECK(s_polynomials_reduce_to_zero(G));
      for (const auto& g : gens) CHECK(normal_form(g, G).is_zero());
      for (std::size_t i = 0; i < G.generators().size(); ++i) {
        CHECK(G.leading_coefficients()[i] == 1);
        for (std::size_t j = 0; j < G.generators().size(); ++j)
          if (i != j) CHECK_FALSE(G.leading_monomials()[i].divides(G.leading_monomials()[j]));
      }
    }
  }
}

TEST_CASE("the reduced basis does not depend on the presentation") {
  auto R = Ring::standard({"x", "y", "z"});
  oracle::Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    auto gens = random_system(rng, R, 3);
    const auto G1 = reduced_groebner(gens, MonomialOrder::grevlex(3));
    std::reverse(gens.begin(), gens.end());
    gens.push_back(gens[0] * gens[1] + gens[2]);
    const auto G2 = reduced_groebner(gens, MonomialOrder::grevlex(3));
    CHECK(G1.generators() == G2.generators());
  }
}

TEST_CASE("normal forms are canonical representatives") {
  auto R = Ring::standard({"x", "y", "z"});
  oracle::Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto gens = random_system(rng, R, 2);
    const auto G = reduced_groebner(gens, MonomialOrder::grevlex(3));
    const Polynomial f = oracle::random_polynomial(rng, R, 4, 0, 4);
    const Polynomial a = oracle::random_polynomial(rng, R, 2, 0, 2);
    const Polynomial r = normal_form(f, G);
    CHECK(normal_form(r, G) == r);
    CHECK(normal_form(f + a * gens[0], G) == r);
    for (const auto& t : r.terms())
      for (const auto& lm : G.leading_monomials()) CHECK_FALSE(lm.divides(t.mono));
  }
}

TEST_CASE("known bases") {
  auto R = Ring::standard({"x", "y", "z", "w"});
  auto v = [&](const char* n) { return Polynomial::variable(R, n); };
  const Polynomial x = v("x"), y = v("y"), z = v("z"), w = v("w");
  // twisted cubic
  const Ideal I(R, {x * z - y * y, x * w - y * z, y * w - z * z});
  CHECK(I.basis().generators().size() == 3);
  CHECK(I.contains(x * w * w - z * z * z + y * (y * w - z * z) - (y * w - z * z) * y));
  CHECK(Ideal(R, {x - Polynomial::constant(R, 1), x}).is_unit());
  CHECK(Ideal::zero(R).is_zero());
  CHECK(Ideal::zero(R).basis().generators().empty());
}

TEST_CASE("budget caps raise BudgetExceeded") {
  auto R = Ring::standard({"x", "y", "z"});
  oracle::Rng rng(99);
  const auto gens = random_system(rng, R, 3);
  CHECK_THROWS_AS(reduced_groebner(gens, MonomialOrder::lex(3), GroebnerBudget{1, 64}), BudgetExceeded);
  CHECK_THROWS_AS(reduced_groebner(gens, MonomialOrder::lex(3), GroebnerBudget{200000, 2}), BudgetExceeded);
}

TEST_CASE("memo table returns the same basis") {
  auto R = Ring::standard({"a", "b"});
  const std::vector<Polynomial> gens{Polynomial::variable(R, "a") * Polynomial::variable(R, "b") -
                                     Polynomial::constant(R, 1)};
  const auto G1 = cached_groebner(gens, MonomialOrder::grevlex(2));
  const auto G2 = cached_groebner(gens, MonomialOrder::grevlex(2));
  CHECK(G1.get() == G2.get());
}

TEST_CASE("intersection and quotient properties") {
  auto R = Ring::standard({"x", "y", "z"});
  oracle::Rng rng(31);
  auto small = [&] { return oracle::random_polynomial(rng, R, 2, 1, 2); };
  for (int trial = 0; trial < 20; ++trial) {
    const Ideal I(R, {small(), small()});
    const Ideal J(R, {small()});
    const Ideal K = ideal_intersect(I, J);
    CHECK(I.contains(K));
    CHECK(J.contains(K));
    CHECK(K.contains(ideal_product(I, J)));
    const Ideal Q = ideal_quotient(I, J);
    CHECK(Q.contains(I));
    CHECK(I.contains(ideal_product(Q, J)));
  }
}

TEST_CASE("intersections of monomial ideals") {
  auto R = Ring::standard({"x", "y"});
  const Polynomial x = Polynomial::variable(R, "x"), y = Polynomial::variable(R, "y");
  CHECK(ideal_equal(ideal_intersect(Ideal(R, {x}), Ideal(R, {y})), Ideal(R, {x * y})));
  CHECK(ideal_equal(ideal_intersect(Ideal(R, {x * x, y}), Ideal(R, {x, y * y})), Ideal(R, {x * x, x * y, y * y})));
  CHECK(ideal_equal(ideal_quotient(Ideal(R, {x * x * y}), x), Ideal(R, {x * y})));
}

TEST_CASE("saturation removes embedded and irrelevant components") {
  auto R = Ring::standard({"x", "y", "z"});
  auto v = [&](const char* n) { return Polynomial::variable(R, n); };
  const Polynomial x = v("x"), y = v("y"), z = v("z");
  const Ideal I(R, {x * x, x * y});
  CHECK(ideal_equal(saturation(I, Ideal(R, {x, y})), Ideal(R, {x})));
  CHECK(saturation(I, Ideal(R, {x})).is_unit());
  const Ideal m3 = ideal_power(Ideal(R, {x, y, z}), 3);
  CHECK(saturate_irrelevant(ideal_intersect(Ideal(R, {x, y}), m3)).contains(Ideal(R, {x, y})));
  CHECK(saturate_irrelevant(m3).is_unit());
  CHECK(is_projectively_empty(m3));
  CHECK_FALSE(is_projectively_empty(Ideal(R, {x, y})));
}

TEST_CASE("dimensions and smoothness") {
  auto R = Ring::standard({"x0", "x1", "x2"});
  auto v = [&](const char* n) { return Polynomial::variable(R, n); };
  const Polynomial x0 = v("x0"), x1 = v("x1"), x2 = v("x2");
  CHECK(krull_dimension(Ideal::zero(R)) == 3);
  CHECK(krull_dimension(Ideal(R, {x0 * x2 - x1 * x1})) == 2);
  CHECK(krull_dimension(Ideal(R, {x0, x1})) == 1);
  CHECK(jacobian_smoothness_check(Ideal(R, {x0 * x2 - x1 * x1}), 1) == Smoothness::smooth);
  CHECK(jacobian_smoothness_check(Ideal(R, {x0 * x2 * x2 - x1 * x1 * x1}), 1) == Smoothness::singular);
}
