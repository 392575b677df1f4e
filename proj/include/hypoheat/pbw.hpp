#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hypoheat/rational.hpp"

namespace hypoheat {

enum class Gen : int { X = 0, Y = 1, Z = 2 };

using Word = std::vector<Gen>;

/// Element of the universal enveloping algebra U(g(rho)) in Poincare-
/// Birkhoff-Witt normal form: a rational combination of ordered monomials
/// X^a Y^b Z^c. Instances are normal-ordered by construction; products go
/// through PbwAlgebra, which owns the bracket parameter rho.
class PBWPoly {
 public:
  using Exponents = std::array<int, 3>;
  using TermMap = std::map<Exponents, Rational>;

  PBWPoly() = default;

  static PBWPoly constant(const Rational& c);
  static PBWPoly generator(Gen g);
  static PBWPoly monomial(const Exponents& e, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  std::size_t term_count() const { return terms_.size(); }

  PBWPoly& add_term(const Exponents& e, const Rational& c);

  friend PBWPoly operator+(const PBWPoly& a, const PBWPoly& b);
  friend PBWPoly operator-(const PBWPoly& a, const PBWPoly& b);
  PBWPoly operator-() const;
  friend PBWPoly operator*(const Rational& s, const PBWPoly& a);
  friend bool operator==(const PBWPoly& a, const PBWPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  TermMap terms_;
};

using OpMatrix = std::array<std::array<PBWPoly, 3>, 3>;

/// Which reducible adjacent pair a word reduction rewrites first. Both
/// strategies must produce the same normal form (confluence).
enum class ReduceOrder { leftmost, rightmost };

/// U(g(rho)) with brackets [X,Y] = Z, [X,Z] = -rho Y, [Y,Z] = rho X.
/// All arithmetic is exact; rho and 1/eps enter as rationals.
class PbwAlgebra {
 public:
  explicit PbwAlgebra(Rational rho) : rho_(std::move(rho)) {}

  const Rational& rho() const { return rho_; }

  /// Product in U(g), result normal-ordered.
  PBWPoly mul(const PBWPoly& a, const PBWPoly& b) const;

  /// normal_form(ab - ba).
  PBWPoly commutator(const PBWPoly& a, const PBWPoly& b) const;

  /// Normal form of a raw generator word by adjacent-pair rewriting
  /// (YX -> XY - Z, ZX -> XZ + rho Y, ZY -> YZ - rho X).
  PBWPoly normal_form(const Word& word, ReduceOrder order = ReduceOrder::leftmost) const;

  /// The sub-Laplacian L = X^2 + Y^2.
  PBWPoly sub_laplacian() const;

  /// The one-form sub-Laplacian as a 3x3 operator matrix on coframe
  /// coefficients; throws std::invalid_argument if eps <= 0.
  OpMatrix box_matrix(const Rational& eps) const;

  /// L + 2J - Ric_H, the eps -> infinity member of the family.
  OpMatrix box_infinity() const;

  /// residual_i = normal_form(D_i L - sum_j box[i][j] D_j) for D = (X, Y, Z).
  /// All three vanish identically; this is the intertwining of d and L at
  /// operator level.
  std::array<PBWPoly, 3> commutation_residuals(const Rational& eps) const;

 private:
  PBWPoly lmul_gen(Gen g, const PBWPoly& p) const;
  PBWPoly lmul_gen_mono(Gen g, const PBWPoly::Exponents& e) const;

  Rational rho_;
};

/// Parses a word such as "ZYX" (case-insensitive). Returns false on any
/// character outside {X, Y, Z}.
bool parse_word(const std::string& text, Word& out);

}  // namespace hypoheat
