#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hypoheat/heis.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/polynomial.hpp"
#include "hypoheat/sde.hpp"

namespace hypoheat {

/// Named test function on a model space, with exact frame differential
/// (Xf, Yf, Zf). On the Heisenberg group these are rational polynomials in
/// (x, y, z); on SU(2)/SL(2) they are polynomials in the group coordinates
/// and the frame derivatives come from d/ds f(g exp(s e_i))|_0, which is
/// again polynomial because right translation is linear in coordinates.
struct TestFunction {
  std::string name;
  GroupKind domain = GroupKind::heisenberg;
  SparsePoly<4, double> value;
  std::array<SparsePoly<4, double>, 3> frame_d;
  std::optional<HeisPoly> exact;  // Heisenberg only: exact rational form

  double eval(const GroupPoint& p) const;
  Eigen::Vector3d dframe(const GroupPoint& p) const;
};

/// Registry names: "1", "x", "y", "z", "xz", "x2+y2", "1+x2/10". On SU(2) the
/// coordinates (x, y, z) map to the quaternion components (q1, q2, q3); on
/// SL(2) to the entry combinations (m01+m10, m00-m11, m01-m10).
/// Throws std::invalid_argument for unknown names.
TestFunction make_function(const ModelSpace& model, const std::string& name);

const std::vector<std::string>& function_names();

}  // namespace hypoheat
