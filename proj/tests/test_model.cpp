#include <doctest.h>

#include "hypoheat/model.hpp"
#include "hypoheat/rng.hpp"

using namespace hypoheat;

TEST_SUITE_BEGIN("model");

TEST_CASE("G(rho) bracket tables") {
  const ModelSpace heis = build_model(Rational(0));
  CHECK(heis.gamma[0][1][0] == Rational(1));
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l) CHECK(heis.delta[i][0][l] == Rational(0));

  const ModelSpace su2 = build_model(Rational(1));
  CHECK(su2.delta[0][0][1] == Rational(-1));  // [X,Z] = -Y
  CHECK(su2.delta[1][0][0] == Rational(1));   // [Y,Z] = X

  SUBCASE("validation accepts the built tables") {
    validate_model(heis);
    validate_model(su2);
    validate_model(build_model(Rational(-7, 3)));
  }

  SUBCASE("validation rejects a broken table") {
    ModelSpace bad = build_model(Rational(1));
    bad.gamma[1][0][0] = Rational(1);  // breaks antisymmetry
    CHECK_THROWS_AS(validate_model(bad), std::invalid_argument);
  }
}

TEST_CASE("Jacobi residual vanishes exactly") {
  SmallRng rng(7);
  for (int i = 0; i < 20; ++i) {
    const Rational rho = rng.small_rational();
    CHECK(jacobi_residual(build_model(rho)) == Rational(0));
  }
}

TEST_CASE("tensor set matches the closed-form matrices") {
  const ModelSpace su2 = build_model(Rational(1));
  const TensorSet t = tensor_set(su2, Rational(1));

  CHECK(t.ric == QMat3::diagonal(Rational(1), Rational(1), Rational(0)));
  CHECK(t.jj == QMat3::diagonal(Rational(1), Rational(1), Rational(0)));
  CHECK(t.c == QMat3::diagonal(Rational(-1, 2), Rational(-1, 2), Rational(0)));

  QMat3 tx_expected;
  tx_expected(1, 2) = Rational(1);
  tx_expected(2, 1) = Rational(-1, 2);
  CHECK(t.t_x == tx_expected);

  QMat3 ty_expected;
  ty_expected(0, 2) = Rational(-1);
  ty_expected(2, 0) = Rational(1, 2);
  CHECK(t.t_y == ty_expected);

  SUBCASE("eps = 1/2 puts 1/(2 eps) = 1 in the twist entries") {
    const TensorSet th = tensor_set(su2, Rational(1, 2));
    CHECK(th.t_x(2, 1) == Rational(-1));
    CHECK(th.t_y(2, 0) == Rational(1));
  }

  SUBCASE("rho = 0 has vanishing Ricci") {
    const TensorSet th = tensor_set(build_model(Rational(0)), Rational(3));
    CHECK(th.ric.is_zero());
  }

  SUBCASE("eps <= 0 is rejected") {
    CHECK_THROWS_AS(tensor_set(su2, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(tensor_set(su2, Rational(-1, 2)), std::invalid_argument);
  }
}

TEST_CASE("torsion twists are skew for G_{2 eps}, exactly") {
  SmallRng rng(11);
  const std::array<Rational, 3> eps_values = {Rational(1, 100), Rational(1), Rational(100)};
  for (int i = 0; i < 10; ++i) {
    const ModelSpace model = build_model(rng.small_rational());
    for (const auto& eps : eps_values) {
      const TensorSet t = tensor_set(model, eps);
      const QMat3 g = QMat3::diagonal(Rational(1), Rational(1), 2 * eps);
      for (const QMat3* a : {&t.t_x, &t.t_y}) {
        const QMat3 s = a->transpose() * g + g * (*a);
        CHECK(s.is_zero());
      }
    }
  }
}

TEST_CASE("frame Ricci sum agrees with the tensor set for every rho and eps") {
  SmallRng rng(13);
  for (int i = 0; i < 10; ++i) {
    const ModelSpace model = build_model(rng.small_rational());
    const QMat3 ric = ric_from_frame(model);
    for (const auto& eps : {Rational(1, 3), Rational(2), Rational(17, 5)})
      CHECK(tensor_set(model, eps).ric == ric);
    CHECK(tensor_set(model, Rational(1)).jj ==
          QMat3::diagonal(Rational(1), Rational(1), Rational(0)));
  }

  CHECK(ric_from_frame(build_model(Rational(-1))) ==
        QMat3::diagonal(Rational(-1), Rational(-1), Rational(0)));
  CHECK(ric_from_frame(build_model(Rational(0))).is_zero());
}

TEST_CASE("vertical connection is the rotation determined by the brackets") {
  // nabla_Z X = rho Y and nabla_Z Y = -rho X follow from the delta table and
  // T(X, Z) = 0; this pins the sign convention used everywhere else.
  const Rational rho(5, 3);
  const auto conn = vertical_connection(build_model(rho));
  CHECK(conn[0][0] == Rational(0));
  CHECK(conn[1][0] == rho);
  CHECK(conn[0][1] == -rho);
  CHECK(conn[1][1] == Rational(0));
}

TEST_CASE("curvature bounds") {
  const CurvatureBounds su2 = curvature_bounds(build_model(Rational(1)));
  CHECK(su2.k == Rational(0));
  CHECK(su2.kappa == Rational(1));
  CHECK(su2.rho1 == Rational(1));
  CHECK(su2.rho2 == Rational(1, 2));

  CHECK(curvature_bounds(build_model(Rational(-1))).k == Rational(1));
  CHECK(curvature_bounds(build_model(Rational(0))).rho1 == Rational(0));
}

TEST_CASE("yang-mills gate accepts constant frames") {
  CHECK(yang_mills_check(build_model(Rational(0))));
  CHECK(yang_mills_check(build_model(Rational(7, 2))));
}

TEST_CASE("model parsing") {
  CHECK(parse_model("heisenberg")->rho == Rational(0));
  CHECK(parse_model("su2")->rho == Rational(1));
  CHECK(parse_model("sl2")->rho == Rational(-1));
  CHECK(parse_model("grho:5/2")->rho == Rational(5, 2));
  CHECK(parse_model("grho:-0.25")->rho == Rational(-1, 4));
  CHECK(!parse_model("torus"));
  CHECK(!parse_model("grho:abc"));

  CHECK(model_name(build_model(Rational(0))) == "heisenberg");
  CHECK(model_name(build_model(Rational(5, 2))) == "grho:5/2");
}

TEST_SUITE_END();
