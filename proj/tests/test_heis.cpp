#include <doctest.h>

#include "hypoheat/heis.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/rng.hpp"

using namespace hypoheat;

namespace {
const HeisPoly kX = HeisPoly::variable(0);
const HeisPoly kY = HeisPoly::variable(1);
const HeisPoly kZ = HeisPoly::variable(2);
}  // namespace

TEST_SUITE_BEGIN("heis");

TEST_CASE("frame fields in the symmetric gauge") {
  CHECK(apply_field(Field::X, kX * kX) == Rational(2) * kX);
  CHECK(apply_field(Field::X, kZ) == Rational(-1, 2) * kY);
  CHECK(apply_field(Field::Y, kZ) == Rational(1, 2) * kX);
  CHECK(apply_field(Field::Z, kZ) == HeisPoly::constant(Rational(1)));
}

TEST_CASE("bracket [X, Y] = Z on random polynomials") {
  SmallRng rng(31);
  for (int i = 0; i < 40; ++i) {
    const HeisPoly p = random_heis_poly(rng, 5);
    const HeisPoly xy = apply_field(Field::X, apply_field(Field::Y, p));
    const HeisPoly yx = apply_field(Field::Y, apply_field(Field::X, p));
    CHECK(xy - yx == apply_field(Field::Z, p));
  }
}

TEST_CASE("exterior derivative") {
  const OneFormPoly dx = exterior_d(kX);
  CHECK(dx.f1 == HeisPoly::constant(Rational(1)));
  CHECK(dx.f2.is_zero());
  CHECK(dx.g.is_zero());

  const OneFormPoly dz = exterior_d(kZ);
  CHECK(dz.f1 == Rational(-1, 2) * kY);
  CHECK(dz.f2 == Rational(1, 2) * kX);
  CHECK(dz.g == HeisPoly::constant(Rational(1)));

  CHECK(exterior_d(HeisPoly::constant(Rational(4))).is_zero());
}

TEST_CASE("heat semigroup oracle values") {
  const Rational t(1);
  CHECK(heat_apply(t, kX * kX + kY * kY) ==
        kX * kX + kY * kY + HeisPoly::constant(Rational(2)));
  CHECK(heat_apply(t, kX * kZ) == kX * kZ - Rational(1, 2) * kY);
  CHECK(heat_apply(t, kX) == kX);
}

TEST_CASE("semigroup property and termination") {
  SmallRng rng(37);
  const Rational s(2, 5), t(3, 4);
  for (int i = 0; i < 25; ++i) {
    const HeisPoly f = random_heis_poly(rng, 4);
    CHECK(heat_apply(s, heat_apply(t, f)) == heat_apply(s + t, f));

    // L lowers the weighted degree by at least 2, which terminates the series.
    const int w = weighted_degree(f);
    HeisPoly iterate = f;
    for (int k = 0; k <= w / 2; ++k) iterate = sub_laplacian(iterate);
    CHECK(iterate.is_zero());
    if (!f.is_zero()) {
      const HeisPoly lf = sub_laplacian(f);
      if (!lf.is_zero()) CHECK(weighted_degree(lf) <= w - 2);
    }
  }
}

TEST_CASE("one-form box action") {
  const Rational eps(1, 3);

  SUBCASE("vertical coframe element") {
    const OneFormPoly nu{HeisPoly{}, HeisPoly{}, HeisPoly::constant(Rational(1))};
    const OneFormPoly out = box_apply(eps, nu);
    CHECK(out.f1.is_zero());
    CHECK(out.f2.is_zero());
    CHECK(out.g == HeisPoly::constant(Rational(-3)));  // -(1/eps)
  }

  SUBCASE("constant horizontal coframe element is annihilated") {
    const OneFormPoly theta1{HeisPoly::constant(Rational(1)), HeisPoly{}, HeisPoly{}};
    CHECK(box_apply(eps, theta1).is_zero());
  }

  SUBCASE("on exact forms the box equals d L") {
    const HeisPoly f = kX * kZ;
    const OneFormPoly lhs = box_apply(eps, exterior_d(f));
    const OneFormPoly rhs = exterior_d(sub_laplacian(f));
    CHECK(lhs == rhs);
  }

  SUBCASE("eps <= 0 rejected") {
    CHECK_THROWS_AS(box_apply(Rational(0), OneFormPoly{}), std::invalid_argument);
  }
}

TEST_CASE("intertwining d L = box d on random polynomials, all eps") {
  SmallRng rng(41);
  const std::array<Rational, 3> eps_values = {Rational(1, 4), Rational(1), Rational(4)};
  for (int i = 0; i < 30; ++i) {
    const HeisPoly f = random_heis_poly(rng, 4);
    const OneFormPoly df = exterior_d(f);
    const OneFormPoly dlf = exterior_d(sub_laplacian(f));
    for (const auto& eps : eps_values) CHECK(box_apply(eps, df) == dlf);
  }
}

TEST_CASE("Bochner-Weitzenboeck residual vanishes identically") {
  SUBCASE("vertical form, both sides equal 2") {
    const OneFormPoly nu{HeisPoly{}, HeisPoly{}, HeisPoly::constant(Rational(1))};
    for (const auto& eps : {Rational(1, 4), Rational(1), Rational(4)})
      CHECK(bw_residual(eps, nu).is_zero());
  }
  SUBCASE("exact form") {
    const OneFormPoly eta = exterior_d(kX * kZ);
    CHECK(bw_residual(Rational(1), eta).is_zero());
  }
  SUBCASE("random one-forms") {
    SmallRng rng(43);
    for (int i = 0; i < 30; ++i) {
      const OneFormPoly eta = random_one_form(rng, 3);
      for (const auto& eps : {Rational(1, 4), Rational(1), Rational(4)})
        CHECK(bw_residual(eps, eta).is_zero());
    }
  }
}

TEST_CASE("fault injection: a corrupted twist matrix breaks the identity") {
  const Rational eps(1);
  const TensorSet t = tensor_set(build_model(Rational(0)), eps);
  QMat3 corrupted = t.t_x;
  corrupted(1, 2) = Rational(2);  // should be 1

  SmallRng rng(47);
  const OneFormPoly eta = random_one_form(rng, 2);
  CHECK(bw_residual_with_tensors(eps, eta, t.t_x, t.t_y, t.ric, t.jj).is_zero());
  CHECK(!bw_residual_with_tensors(eps, eta, corrupted, t.t_y, t.ric, t.jj).is_zero());
}

TEST_SUITE_END();
