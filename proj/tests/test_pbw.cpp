#include <doctest.h>

#include "hypoheat/pbw.hpp"
#include "hypoheat/rng.hpp"

using namespace hypoheat;

namespace {

PBWPoly from_word(const PbwAlgebra& algebra, std::initializer_list<Gen> letters) {
  // Product route through the structured multiplication, independent of the
  // word rewriter.
  PBWPoly acc = PBWPoly::constant(Rational(1));
  for (Gen g : letters) acc = algebra.mul(acc, PBWPoly::generator(g));
  return acc;
}

Word random_word(SmallRng& rng, int max_len) {
  Word w(static_cast<size_t>(rng.uniform_int(0, max_len)));
  for (auto& g : w) g = static_cast<Gen>(rng.uniform_int(0, 2));
  return w;
}

}  // namespace

TEST_SUITE_BEGIN("pbw");

TEST_CASE("defining rewrites") {
  PbwAlgebra algebra{Rational(5, 7)};
  const Rational rho = algebra.rho();

  SUBCASE("YX -> XY - Z") {
    PBWPoly expected;
    expected.add_term({1, 1, 0}, Rational(1));
    expected.add_term({0, 0, 1}, Rational(-1));
    CHECK(algebra.normal_form({Gen::Y, Gen::X}) == expected);
  }
  SUBCASE("ZX -> XZ + rho Y") {
    PBWPoly expected;
    expected.add_term({1, 0, 1}, Rational(1));
    expected.add_term({0, 1, 0}, rho);
    CHECK(algebra.normal_form({Gen::Z, Gen::X}) == expected);
  }
  SUBCASE("ZY -> YZ - rho X") {
    PBWPoly expected;
    expected.add_term({0, 1, 1}, Rational(1));
    expected.add_term({1, 0, 0}, -rho);
    CHECK(algebra.normal_form({Gen::Z, Gen::Y}) == expected);
  }
  SUBCASE("ZYX -> XYZ - rho X^2 + rho Y^2 - Z^2") {
    PBWPoly expected;
    expected.add_term({1, 1, 1}, Rational(1));
    expected.add_term({2, 0, 0}, -rho);
    expected.add_term({0, 2, 0}, rho);
    expected.add_term({0, 0, 2}, Rational(-1));
    CHECK(algebra.normal_form({Gen::Z, Gen::Y, Gen::X}) == expected);
    CHECK(from_word(algebra, {Gen::Z, Gen::Y, Gen::X}) == expected);
  }
}

TEST_CASE("commutators with the sub-Laplacian") {
  const Rational rho(-3, 2);
  PbwAlgebra algebra{rho};
  const PBWPoly l = algebra.sub_laplacian();

  SUBCASE("[X, Y] = Z") {
    CHECK(algebra.commutator(PBWPoly::generator(Gen::X), PBWPoly::generator(Gen::Y)) ==
          PBWPoly::generator(Gen::Z));
  }
  SUBCASE("[Z, L] = 0") {
    CHECK(algebra.commutator(PBWPoly::generator(Gen::Z), l).is_zero());
  }
  SUBCASE("[X, L] = 2YZ - rho X") {
    PBWPoly expected;
    expected.add_term({0, 1, 1}, Rational(2));
    expected.add_term({1, 0, 0}, -rho);
    CHECK(algebra.commutator(PBWPoly::generator(Gen::X), l) == expected);
  }
}

TEST_CASE("confluence: reduction order does not matter") {
  SmallRng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational rho = rng.small_rational();
    PbwAlgebra algebra{rho};
    const Word w = random_word(rng, 8);
    const PBWPoly left = algebra.normal_form(w, ReduceOrder::leftmost);
    const PBWPoly right = algebra.normal_form(w, ReduceOrder::rightmost);
    CHECK(left == right);

    PBWPoly structural = PBWPoly::constant(Rational(1));
    for (Gen g : w) structural = algebra.mul(structural, PBWPoly::generator(g));
    CHECK(left == structural);
  }
}

TEST_CASE("rewrites never raise the total degree") {
  SmallRng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    PbwAlgebra algebra{rng.small_rational()};
    const Word w = random_word(rng, 8);
    CHECK(algebra.normal_form(w).total_degree() <= static_cast<int>(w.size()));
  }
}

TEST_CASE("Jacobi identity holds in U(g)") {
  PbwAlgebra algebra{Rational(9, 4)};
  const std::array<PBWPoly, 3> gens = {PBWPoly::generator(Gen::X), PBWPoly::generator(Gen::Y),
                                       PBWPoly::generator(Gen::Z)};
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& c : gens) {
        const PBWPoly total = algebra.commutator(algebra.commutator(a, b), c) +
                              algebra.commutator(algebra.commutator(b, c), a) +
                              algebra.commutator(algebra.commutator(c, a), b);
        CHECK(total.is_zero());
      }
}

TEST_CASE("associativity of the product") {
  SmallRng rng(107);
  PbwAlgebra algebra{Rational(2, 3)};
  for (int trial = 0; trial < 30; ++trial) {
    const PBWPoly a = algebra.normal_form(random_word(rng, 4));
    const PBWPoly b = algebra.normal_form(random_word(rng, 4));
    const PBWPoly c = algebra.normal_form(random_word(rng, 4));
    CHECK(algebra.mul(algebra.mul(a, b), c) == algebra.mul(a, algebra.mul(b, c)));
  }
}

TEST_CASE("box matrix entries") {
  SUBCASE("rho = 0, eps = 1") {
    PbwAlgebra algebra{Rational(0)};
    const OpMatrix box = algebra.box_matrix(Rational(1));
    PBWPoly two_y;
    two_y.add_term({0, 1, 0}, Rational(2));
    CHECK(box[0][2] == two_y);
    PBWPoly l_minus_one;
    l_minus_one.add_term({2, 0, 0}, Rational(1));
    l_minus_one.add_term({0, 2, 0}, Rational(1));
    l_minus_one.add_term({0, 0, 0}, Rational(-1));
    CHECK(box[2][2] == l_minus_one);
  }
  SUBCASE("entry (0,1) vanishes for every (rho, eps)") {
    SmallRng rng(109);
    for (int i = 0; i < 10; ++i) {
      PbwAlgebra algebra{rng.small_rational()};
      const OpMatrix box = algebra.box_matrix(Rational(1, 3));
      CHECK(box[0][1].is_zero());
      CHECK(box[1][0].is_zero());
    }
  }
  SUBCASE("rho = 1, eps = 1/2 gives -(1/eps) Y = -2Y in entry (2,0)") {
    PbwAlgebra algebra{Rational(1)};
    const OpMatrix box = algebra.box_matrix(Rational(1, 2));
    PBWPoly expected;
    expected.add_term({0, 1, 0}, Rational(-2));
    CHECK(box[2][0] == expected);
  }
  SUBCASE("box_infinity drops the 1/eps terms") {
    PbwAlgebra algebra{Rational(1)};
    const OpMatrix box = algebra.box_infinity();
    CHECK(box[2][0].is_zero());
    CHECK(box[2][1].is_zero());
    CHECK(box[2][2] == algebra.sub_laplacian());
  }
  SUBCASE("eps <= 0 rejected") {
    PbwAlgebra algebra{Rational(1)};
    CHECK_THROWS_AS(algebra.box_matrix(Rational(0)), std::invalid_argument);
  }
}

TEST_CASE("operator-level intertwining residuals vanish") {
  for (const Rational& rho : {Rational(0), Rational(1), Rational(5, 2)}) {
    PbwAlgebra algebra{rho};
    for (const Rational& eps : {Rational(1), Rational(1, 10)}) {
      const auto residuals = algebra.commutation_residuals(eps);
      for (const auto& r : residuals) CHECK(r.is_zero());
    }
  }
}

TEST_CASE("word parsing") {
  Word w;
  CHECK(parse_word("ZyX", w));
  CHECK(w == Word{Gen::Z, Gen::Y, Gen::X});
  CHECK(!parse_word("XQ", w));
}

TEST_SUITE_END();
