#pragma once

#include <array>
#include <optional>
#include <string>

#include "hypoheat/mat3.hpp"
#include "hypoheat/rational.hpp"

namespace hypoheat {

enum class GroupKind { heisenberg, su2, sl2 };

/// Structure constants of a constant adapted frame {X, Y, Z} with horizontal
/// rank 2 and vertical rank 1:
///   [X_i, X_j] = sum_l omega[i][j][l] X_l + gamma[i][j][0] Z
///   [X_i, Z]   = sum_l delta[i][0][l] X_l
struct ModelSpace {
  static constexpr int d = 2;
  static constexpr int h = 1;

  Rational rho;
  std::array<std::array<std::array<Rational, h>, d>, d> gamma{};
  std::array<std::array<std::array<Rational, d>, h>, d> delta{};
  std::array<std::array<std::array<Rational, d>, d>, d> omega{};

  GroupKind group() const {
    if (rho == 0) return GroupKind::heisenberg;
    return rho > 0 ? GroupKind::su2 : GroupKind::sl2;
  }
};

/// The model space G(rho): [X,Y] = Z, [X,Z] = -rho Y, [Y,Z] = rho X.
ModelSpace build_model(const Rational& rho);

/// Parses "heisenberg" | "su2" | "sl2" | "grho:<rho>" (rho as p/q or decimal).
std::optional<ModelSpace> parse_model(const std::string& spec);
std::string model_name(const ModelSpace& model);

/// Checks the antisymmetry conventions and the Killing-field relation
/// delta[i][m][l] = -delta[l][m][i]. Throws std::invalid_argument otherwise.
void validate_model(const ModelSpace& model);

/// Exact Jacobi residual of the bracket table, maximum absolute coefficient
/// over all basis triples. Zero for any Lie algebra.
Rational jacobi_residual(const ModelSpace& model);

/// Horizontal divergence of the torsion vanishes identically for constant
/// structure constants; non-constant frames are outside the supported domain.
bool yang_mills_check(const ModelSpace& model);

/// The 3x3 tensors acting on coframe coefficients (theta1, theta2, nu).
struct TensorSet {
  Rational epsilon;
  QMat3 ric;  // horizontal Ricci
  QMat3 jj;   // J*J
  QMat3 t_x;  // torsion twist along X
  QMat3 t_y;  // torsion twist along Y
  QMat3 c;    // transport drift: (1/(2 eps)) J*J - Ric
};

/// Builds the tensors for the given eps > 0; throws std::invalid_argument if
/// eps <= 0.
TensorSet tensor_set(const ModelSpace& model, const Rational& epsilon);

/// Ricci from the frame sum rho_{kl} = sum_{j,m} gamma[k][j][m] delta[j][m][l],
/// symmetrized. Must agree with tensor_set(...).ric for constant frames.
QMat3 ric_from_frame(const ModelSpace& model);

/// Connection coefficient nabla_Z X_i = -sum_l delta[i][0][l] X_l, returned as
/// the 2x2 horizontal rotation matrix (column i holds the coefficients).
std::array<std::array<Rational, 2>, 2> vertical_connection(const ModelSpace& model);

struct CurvatureBounds {
  Rational k;      // Ric_H >= -K with K >= 0
  Rational kappa;  // J*J <= kappa
  Rational rho1;   // lower Ricci bound (may be <= 0)
  Rational rho2;   // torsion nondegeneracy constant
};

CurvatureBounds curvature_bounds(const ModelSpace& model);

}  // namespace hypoheat
