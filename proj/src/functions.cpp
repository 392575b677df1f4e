#include "hypoheat/functions.hpp"

#include <stdexcept>

namespace hypoheat {

namespace {

using Poly4 = SparsePoly<4, double>;
using Mat4 = Eigen::Matrix4d;

Poly4 from_heis(const HeisPoly& p) {
  Poly4 out;
  for (const auto& [e, c] : p.terms()) out.add_term({e[0], e[1], e[2], 0}, to_double(c));
  return out;
}

// Right-multiplication by the pure quaternion e, as a linear map on
// (q0, q1, q2, q3): column b holds basis_b * e.
Mat4 quat_right_mul(const Eigen::Vector4d& e) {
  Mat4 r;
  auto mul = [](const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
    return Eigen::Vector4d(p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                           p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                           p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                           p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
  };
  for (int b = 0; b < 4; ++b) {
    Eigen::Vector4d basis = Eigen::Vector4d::Zero();
    basis[b] = 1.0;
    r.col(b) = mul(basis, e);
  }
  return r;
}

// Right-multiplication by the 2x2 matrix E on flattened (m00, m01, m10, m11).
Mat4 mat2_right_mul(const Eigen::Matrix2d& e) {
  Mat4 r = Mat4::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) r(2 * a + b, 2 * a + c) = e(c, b);
  return r;
}

Poly4 directional(const Poly4& f, const Mat4& right_mul) {
  Poly4 out;
  for (int alpha = 0; alpha < 4; ++alpha) {
    const Poly4 df = f.derivative(alpha);
    if (df.is_zero()) continue;
    Poly4 linear;
    for (int beta = 0; beta < 4; ++beta) {
      const double coeff = right_mul(alpha, beta);
      if (coeff != 0.0) linear.add_term({beta == 0, beta == 1, beta == 2, beta == 3}, coeff);
    }
    out = out + df * linear;
  }
  return out;
}

std::array<Mat4, 3> frame_generators(const ModelSpace& model) {
  const double rho = to_double(model.rho);
  if (model.group() == GroupKind::su2) {
    const double s = std::sqrt(rho);
    return {quat_right_mul({0.0, 0.5 * s, 0.0, 0.0}),
            quat_right_mul({0.0, 0.0, 0.5 * s, 0.0}),
            quat_right_mul({0.0, 0.0, 0.0, 0.5 * rho})};
  }
  const double s = std::sqrt(-rho);
  Eigen::Matrix2d e1, e2, e3;
  e1 << 0.5 * s, 0.0, 0.0, -0.5 * s;
  e2 << 0.0, 0.5 * s, 0.5 * s, 0.0;
  e3 << 0.0, -0.5 * rho, 0.5 * rho, 0.0;
  return {mat2_right_mul(e1), mat2_right_mul(e2), mat2_right_mul(e3)};
}

// Coordinate polynomials playing the role of x, y, z on each group.
std::array<Poly4, 3> base_coordinates(GroupKind kind) {
  auto v = [](int i) { return Poly4::variable(i); };
  switch (kind) {
    case GroupKind::heisenberg:
      return {v(0), v(1), v(2)};
    case GroupKind::su2:
      return {v(1), v(2), v(3)};
    case GroupKind::sl2:
      return {v(1) + v(2), v(0) - v(3), v(1) - v(2)};
  }
  return {v(0), v(1), v(2)};
}

std::array<HeisPoly, 3> heis_coordinates() {
  return {HeisPoly::variable(0), HeisPoly::variable(1), HeisPoly::variable(2)};
}

}  // namespace

double TestFunction::eval(const GroupPoint& p) const {
  const std::array<double, 4> pt = {p.coords[0], p.coords[1], p.coords[2], p.coords[3]};
  return value.eval(pt);
}

Eigen::Vector3d TestFunction::dframe(const GroupPoint& p) const {
  const std::array<double, 4> pt = {p.coords[0], p.coords[1], p.coords[2], p.coords[3]};
  return {frame_d[0].eval(pt), frame_d[1].eval(pt), frame_d[2].eval(pt)};
}

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names = {"1", "x", "y", "z", "xz", "x2+y2", "1+x2/10"};
  return names;
}

TestFunction make_function(const ModelSpace& model, const std::string& name) {
  TestFunction f;
  f.name = name;
  f.domain = model.group();

  if (f.domain == GroupKind::heisenberg) {
    const auto [x, y, z] = heis_coordinates();
    HeisPoly p;
    if (name == "1") {
      p = HeisPoly::constant(Rational(1));
    } else if (name == "x") {
      p = x;
    } else if (name == "y") {
      p = y;
    } else if (name == "z") {
      p = z;
    } else if (name == "xz") {
      p = x * z;
    } else if (name == "x2+y2") {
      p = x * x + y * y;
    } else if (name == "1+x2/10") {
      p = HeisPoly::constant(Rational(1)) + Rational(1, 10) * (x * x);
    } else {
      throw std::invalid_argument("unknown test function: " + name);
    }
    f.exact = p;
    f.value = from_heis(p);
    f.frame_d = {from_heis(apply_field(Field::X, p)), from_heis(apply_field(Field::Y, p)),
                 from_heis(apply_field(Field::Z, p))};
    return f;
  }

  const auto [x, y, z] = base_coordinates(f.domain);
  Poly4 p;
  if (name == "1") {
    p = Poly4::constant(1.0);
  } else if (name == "x") {
    p = x;
  } else if (name == "y") {
    p = y;
  } else if (name == "z") {
    p = z;
  } else if (name == "xz") {
    p = x * z;
  } else if (name == "x2+y2") {
    p = x * x + y * y;
  } else if (name == "1+x2/10") {
    p = Poly4::constant(1.0) + 0.1 * (x * x);
  } else {
    throw std::invalid_argument("unknown test function: " + name);
  }
  f.value = p;
  const auto gens = frame_generators(model);
  for (int i = 0; i < 3; ++i) f.frame_d[i] = directional(p, gens[i]);
  return f;
}

}  // namespace hypoheat
