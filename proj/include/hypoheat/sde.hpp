#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypoheat/model.hpp"
#include "hypoheat/rational.hpp"

namespace hypoheat {

enum class Scheme { stratonovich_heun, ito_euler, exp_splitting };

const char* scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& name);

struct PathConfig {
  double t_final = 1.0;
  int n_steps = 500;
  Scheme scheme = Scheme::exp_splitting;
  uint64_t seed = 0;
  int64_t path_index = 0;
};

/// Group element in coordinates: Heisenberg (x, y, z, unused), SU(2) as a
/// unit quaternion (w, x, y, z), SL(2) as a row-major 2x2 matrix
/// (m00, m01, m10, m11) with unit determinant.
struct GroupPoint {
  GroupKind kind = GroupKind::heisenberg;
  Eigen::Vector4d coords = Eigen::Vector4d::Zero();
};

GroupPoint identity_point(GroupKind kind);

/// One step of the horizontal random walk: Heisenberg uses the midpoint
/// (Stratonovich) area rule, SU(2)/SL(2) right-multiply by the closed-form
/// exponential of d1 X + d2 Y. `gen_scale` is sqrt(|rho|).
void evolve_group(GroupKind kind, double gen_scale, Eigen::Vector4d& coords, double d1, double d2);

/// Gaussian pairs with variance h each, deterministic in (seed, path, step).
std::vector<std::array<double, 2>> sample_increments(const PathConfig& config);

/// Matrix exponential by scaling and squaring (small matrices only).
Eigen::Matrix3d expm3(const Eigen::Matrix3d& a);

/// Deterministic piecewise-constant horizontal control gamma'(t).
struct PiecewiseControl {
  std::vector<double> knots;              // ascending; value i applies on [knots[i], knots[i+1])
  std::vector<Eigen::Vector2d> values;    // size knots.size()

  static PiecewiseControl constant(const Eigen::Vector2d& v) { return {{0.0}, {v}}; }
  Eigen::Vector2d eval(double t) const;
};

/// Everything the transport SDE needs, in double precision.
struct TransportMats {
  Eigen::Matrix3d t_x, t_y, c;
  Eigen::Matrix3d ito_q;  // Stratonovich-to-Ito correction (t_x^2 + t_y^2)/2
  double eps = 1.0;
  double two_eps = 2.0;
  double bound_rate = 0.0;  // (K + kappa/(2 eps)) / 2 from the curvature bounds
};

struct PathResult {
  GroupPoint endpoint;
  Eigen::Matrix3d transport = Eigen::Matrix3d::Identity();
  Eigen::Vector3d ibp_integral = Eigen::Vector3d::Zero();  // sum (M_s^T)^{-1} gamma' h
  double control_ito = 0.0;                                // sum gamma' . dB
  double max_bound_ratio = 0.0;  // peak ||M e_i||_{2e} / (e^{rate t} ||e_i||_{2e})
  bool ok = true;
  std::string diagnostic;
};

/// Simulates the horizontal Brownian path on G(rho) together with the damped
/// parallel transport in left-invariant frame coefficients:
///   dM = M (-t_x o dB1 - t_y o dB2 + (1/2) c dt),  M_0 = Id.
class Simulator {
 public:
  Simulator(const ModelSpace& model, const Rational& eps);

  GroupKind kind() const { return kind_; }
  const TransportMats& mats() const { return mats_; }
  const CurvatureBounds& bounds() const { return bounds_; }
  double eps() const { return mats_.eps; }

  struct Plan {
    double t_final;
    int n_steps;
    Scheme scheme;
    double h, sqrt_h;
    Eigen::Matrix3d exp_ch_half;  // exp(c h / 2)
    Eigen::Matrix3d euler_step;   // I + (c/2 + ito_q) h
    bool compute_transport = true;
  };

  Plan plan(const PathConfig& config, bool compute_transport = true) const;

  PathResult run(const Plan& plan, uint64_t seed, int64_t path_index,
                 const GroupPoint* start = nullptr, const PiecewiseControl* control = nullptr,
                 bool track_bound = false, std::ostream* trace = nullptr) const;

  PathResult run(const PathConfig& config, const GroupPoint* start = nullptr,
                 const PiecewiseControl* control = nullptr, bool track_bound = false,
                 std::ostream* trace = nullptr) const;

  /// One transport step, exposed for scheme-level tests.
  static void transport_step(const TransportMats& mats, const Plan& plan, Eigen::Matrix3d& m,
                             double d1, double d2);

 private:
  GroupKind kind_;
  double gen_scale_;
  TransportMats mats_;
  CurvatureBounds bounds_;
};

}  // namespace hypoheat
