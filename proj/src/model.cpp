#include "hypoheat/model.hpp"

#include <stdexcept>

namespace hypoheat {

namespace {

using Coeffs = std::array<Rational, 3>;

// Bracket of two basis elements, as coefficients over (X, Y, Z).
Coeffs basis_bracket(const ModelSpace& m, int a, int b) {
  Coeffs r{};
  if (a == b) return r;
  if (a < 2 && b < 2) {
    for (int l = 0; l < 2; ++l) r[l] = m.omega[a][b][l];
    r[2] = m.gamma[a][b][0];
  } else if (a < 2 && b == 2) {
    for (int l = 0; l < 2; ++l) r[l] = m.delta[a][0][l];
  } else if (a == 2 && b < 2) {
    for (int l = 0; l < 2; ++l) r[l] = -m.delta[b][0][l];
  }
  return r;
}

Coeffs bracket_with_vector(const ModelSpace& m, int a, const Coeffs& v) {
  Coeffs r{};
  for (int b = 0; b < 3; ++b) {
    if (v[b] == 0) continue;
    Coeffs w = basis_bracket(m, a, b);
    for (int l = 0; l < 3; ++l) r[l] += v[b] * w[l];
  }
  return r;
}

}  // namespace

ModelSpace build_model(const Rational& rho) {
  ModelSpace m;
  m.rho = rho;
  m.gamma[0][1][0] = Rational(1);
  m.gamma[1][0][0] = Rational(-1);
  // [X, Z] = -rho Y and [Y, Z] = rho X.
  m.delta[0][0][1] = -rho;
  m.delta[1][0][0] = rho;
  return m;
}

std::optional<ModelSpace> parse_model(const std::string& spec) {
  if (spec == "heisenberg") return build_model(Rational(0));
  if (spec == "su2") return build_model(Rational(1));
  if (spec == "sl2") return build_model(Rational(-1));
  constexpr std::string_view prefix = "grho:";
  if (spec.rfind(prefix, 0) == 0) {
    auto rho = parse_rational(spec.substr(prefix.size()));
    if (!rho) return std::nullopt;
    return build_model(*rho);
  }
  return std::nullopt;
}

std::string model_name(const ModelSpace& model) {
  if (model.rho == 0) return "heisenberg";
  if (model.rho == 1) return "su2";
  if (model.rho == -1) return "sl2";
  return "grho:" + to_fraction_string(model.rho);
}

void validate_model(const ModelSpace& model) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (model.gamma[i][j][0] != -model.gamma[j][i][0])
        throw std::invalid_argument("gamma must be antisymmetric in (i, j)");
      for (int l = 0; l < 2; ++l)
        if (model.omega[i][j][l] != -model.omega[j][i][l])
          throw std::invalid_argument("omega must be antisymmetric in (i, j)");
    }
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l)
      if (model.delta[i][0][l] != -model.delta[l][0][i])
        throw std::invalid_argument("delta must satisfy delta[i][m][l] = -delta[l][m][i]");
  if (jacobi_residual(model) != 0)
    throw std::invalid_argument("bracket table violates the Jacobi identity");
}

Rational jacobi_residual(const ModelSpace& model) {
  Rational worst(0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        Coeffs total{};
        const std::array<std::array<int, 3>, 3> cyc = {{{a, b, c}, {b, c, a}, {c, a, b}}};
        for (const auto& t : cyc) {
          Coeffs inner = basis_bracket(model, t[0], t[1]);
          // [[u, v], w] = -[w, [u, v]]
          Coeffs outer = bracket_with_vector(model, t[2], inner);
          for (int l = 0; l < 3; ++l) total[l] -= outer[l];
        }
        for (const auto& x : total) {
          Rational mag = x < 0 ? Rational(-x) : x;
          if (mag > worst) worst = mag;
        }
      }
  return worst;
}

bool yang_mills_check(const ModelSpace& model) {
  // sum_i X_i gamma[i][j][m] involves only derivatives of the structure
  // constants, which are identically zero in the constant-frame domain.
  (void)model;
  return true;
}

QMat3 ric_from_frame(const ModelSpace& model) {
  std::array<std::array<Rational, 2>, 2> rho{};
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 2; ++j)
        for (int m = 0; m < 1; ++m) rho[k][l] += model.gamma[k][j][m] * model.delta[j][m][l];
  QMat3 r;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) r(k, l) = (rho[k][l] + rho[l][k]) / 2;
  return r;
}

std::array<std::array<Rational, 2>, 2> vertical_connection(const ModelSpace& model) {
  std::array<std::array<Rational, 2>, 2> conn{};
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l) conn[l][i] = -model.delta[i][0][l];
  return conn;
}

TensorSet tensor_set(const ModelSpace& model, const Rational& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  TensorSet t;
  t.epsilon = epsilon;
  t.ric = ric_from_frame(model);

  // J on horizontal coefficients: (J v)_j = -sum_i gamma[i][j] v_i, and
  // J*J = J^T J embedded with zero third row/column.
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      Rational s(0);
      for (int j = 0; j < 2; ++j) s += model.gamma[k][j][0] * model.gamma[l][j][0];
      t.jj(k, l) = s;
    }

  const Rational half_inv_eps = Rational(1) / (2 * epsilon);
  for (int i = 0; i < 2; ++i) {
    QMat3 ti;
    for (int j = 0; j < 2; ++j) {
      ti(j, 2) = model.gamma[i][j][0];
      ti(2, j) = -half_inv_eps * model.gamma[i][j][0];
    }
    (i == 0 ? t.t_x : t.t_y) = ti;
  }

  t.c = half_inv_eps * t.jj - t.ric;
  return t;
}

CurvatureBounds curvature_bounds(const ModelSpace& model) {
  CurvatureBounds b;
  QMat3 ric = ric_from_frame(model);
  // For rank (2, 1) frames the delta relation forces ric diagonal and
  // J^T J a multiple of the horizontal identity.
  Rational lo = ric(0, 0) < ric(1, 1) ? ric(0, 0) : ric(1, 1);
  b.rho1 = lo;
  b.k = lo < 0 ? Rational(-lo) : Rational(0);

  Rational kap(0);
  for (int j = 0; j < 2; ++j) kap += model.gamma[0][j][0] * model.gamma[0][j][0];
  b.kappa = kap;

  // (1/4) sum_{l,j} <T(theta_l, theta_j), nu>^2 over the unit vertical
  // direction; in vertical rank 1 the minimization is trivial.
  Rational r2(0);
  for (int l = 0; l < 2; ++l)
    for (int j = 0; j < 2; ++j) r2 += model.gamma[l][j][0] * model.gamma[l][j][0];
  b.rho2 = r2 / 4;
  return b;
}

}  // namespace hypoheat
