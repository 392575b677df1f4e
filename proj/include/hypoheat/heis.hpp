#pragma once

#include "hypoheat/mat3.hpp"
#include "hypoheat/polynomial.hpp"
#include "hypoheat/rational.hpp"

namespace hypoheat {

/// Exact polynomial in Heisenberg coordinates (x, y, z).
using HeisPoly = SparsePoly<3, Rational>;

enum class Field { X, Y, Z };

/// Left-invariant frame in the symmetric gauge:
///   X = d/dx - (y/2) d/dz,  Y = d/dy + (x/2) d/dz,  Z = d/dz.
HeisPoly apply_field(Field which, const HeisPoly& p);

/// Sub-Laplacian L = X^2 + Y^2. Strictly lowers the weighted degree
/// w(x^i y^j z^k) = i + j + 2k by 2.
HeisPoly sub_laplacian(const HeisPoly& p);

int weighted_degree(const HeisPoly& p);

/// One-form with polynomial coefficients over the coframe (theta1, theta2, nu).
struct OneFormPoly {
  HeisPoly f1, f2, g;

  friend OneFormPoly operator+(const OneFormPoly& a, const OneFormPoly& b) {
    return {a.f1 + b.f1, a.f2 + b.f2, a.g + b.g};
  }
  friend OneFormPoly operator-(const OneFormPoly& a, const OneFormPoly& b) {
    return {a.f1 - b.f1, a.f2 - b.f2, a.g - b.g};
  }
  friend bool operator==(const OneFormPoly& a, const OneFormPoly& b) {
    return a.f1 == b.f1 && a.f2 == b.f2 && a.g == b.g;
  }
  bool is_zero() const { return f1.is_zero() && f2.is_zero() && g.is_zero(); }
};

/// df = (Xf) theta1 + (Yf) theta2 + (Zf) nu.
OneFormPoly exterior_d(const HeisPoly& f);

/// P_t f = exp(tL/2) f as a terminating exact series; the number of nonzero
/// terms is at most ceil(w(f)/2) + 1.
HeisPoly heat_apply(const Rational& t, const HeisPoly& f);

/// Applies the one-form sub-Laplacian [[L,0,2Y],[0,L,-2X],[-Y/e,X/e,L-1/e]]
/// exactly. Throws std::invalid_argument if eps <= 0.
OneFormPoly box_apply(const Rational& eps, const OneFormPoly& eta);

/// <a, b>_{2 eps} = a1 b1 + a2 b2 + 2 eps a3 b3 on coefficients, as an exact
/// polynomial.
HeisPoly inner_2eps(const Rational& eps, const OneFormPoly& a, const OneFormPoly& b);
HeisPoly norm2_2eps(const Rational& eps, const OneFormPoly& a);

/// Applies a rational 3x3 matrix to the coefficient triple.
OneFormPoly apply_tensor(const QMat3& m, const OneFormPoly& eta);

/// Residual of the Bochner-Weitzenboeck identity at rho = 0:
///   (1/2) L ||eta||^2 - <box eta, eta> - sum_i ||nabla_i eta - T_i eta||^2
///   - <(Ric - J*J/(2 eps)) eta, eta>,
/// all in the 2 eps pairing. Identically the zero polynomial.
HeisPoly bw_residual(const Rational& eps, const OneFormPoly& eta);

/// Same computation with injectable tensors (used for fault-injection tests).
HeisPoly bw_residual_with_tensors(const Rational& eps, const OneFormPoly& eta, const QMat3& t_x,
                                  const QMat3& t_y, const QMat3& ric, const QMat3& jj);

class SmallRng;

/// Seeded random polynomial with small rational coefficients and total
/// degree at most max_degree.
HeisPoly random_heis_poly(SmallRng& rng, int max_degree);
OneFormPoly random_one_form(SmallRng& rng, int max_degree);

}  // namespace hypoheat
