#pragma once

#include <Eigen/Core>

#include <array>
#include <initializer_list>

#include "hypoheat/rational.hpp"

namespace hypoheat {

/// Fixed 3x3 matrix over an exact scalar. Eigen handles the floating-point
/// side; this type exists so structure-constant tensors stay rational.
template <typename T>
struct Mat3 {
  std::array<std::array<T, 3>, 3> m{};

  static Mat3 zero() { return Mat3{}; }

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = T(1);
    return r;
  }

  static Mat3 diagonal(const T& a, const T& b, const T& c) {
    Mat3 r;
    r.m[0][0] = a;
    r.m[1][1] = b;
    r.m[2][2] = c;
    return r;
  }

  const T& operator()(int i, int j) const { return m[i][j]; }
  T& operator()(int i, int j) { return m[i][j]; }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  friend Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
  }

  friend Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
  }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T s{};
        for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  friend Mat3 operator*(const T& s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
    return r;
  }

  std::array<T, 3> operator*(const std::array<T, 3>& v) const {
    std::array<T, 3> r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
    return r;
  }

  friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }

  bool is_zero() const {
    for (const auto& row : m)
      for (const auto& x : row)
        if (x != T(0)) return false;
    return true;
  }
};

using QMat3 = Mat3<Rational>;

inline Eigen::Matrix3d to_matrix3d(const QMat3& a) {
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = to_double(a(i, j));
  return r;
}

}  // namespace hypoheat
