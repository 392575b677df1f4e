#include "hypoheat/sde.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hypoheat/rng.hpp"

namespace hypoheat {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::stratonovich_heun: return "stratonovich_heun";
    case Scheme::ito_euler: return "ito_euler";
    case Scheme::exp_splitting: return "exp_splitting";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "stratonovich_heun" || name == "heun") return Scheme::stratonovich_heun;
  if (name == "ito_euler" || name == "euler") return Scheme::ito_euler;
  if (name == "exp_splitting" || name == "exp") return Scheme::exp_splitting;
  return std::nullopt;
}

GroupPoint identity_point(GroupKind kind) {
  GroupPoint p;
  p.kind = kind;
  switch (kind) {
    case GroupKind::heisenberg: p.coords = Eigen::Vector4d::Zero(); break;
    case GroupKind::su2: p.coords = Eigen::Vector4d(1, 0, 0, 0); break;
    case GroupKind::sl2: p.coords = Eigen::Vector4d(1, 0, 0, 1); break;
  }
  return p;
}

namespace {

inline Eigen::Vector4d quat_mul(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

inline Eigen::Vector4d quat_exp_pure(double a, double b, double c) {
  const double theta = std::sqrt(a * a + b * b + c * c);
  double s;
  if (theta < 1e-8) {
    s = 1.0 - theta * theta / 6.0;
  } else {
    s = std::sin(theta) / theta;
  }
  return {std::cos(theta), s * a, s * b, s * c};
}

// exp of the traceless 2x2 matrix [[a, b], [c, -a]].
inline Eigen::Matrix2d expm2_traceless(double a, double b, double c) {
  const double disc = a * a + b * c;  // = -det
  Eigen::Matrix2d m;
  m << a, b, c, -a;
  double ch, sh;  // cosh(theta), sinh(theta)/theta for theta^2 = disc
  if (disc > 1e-16) {
    const double t = std::sqrt(disc);
    ch = std::cosh(t);
    sh = std::sinh(t) / t;
  } else if (disc < -1e-16) {
    const double t = std::sqrt(-disc);
    ch = std::cos(t);
    sh = std::sin(t) / t;
  } else {
    ch = 1.0 + disc / 2.0;
    sh = 1.0 + disc / 6.0;
  }
  return ch * Eigen::Matrix2d::Identity() + sh * m;
}

}  // namespace

void evolve_group(GroupKind kind, double gen_scale, Eigen::Vector4d& coords, double d1,
                  double d2) {
  switch (kind) {
    case GroupKind::heisenberg: {
      const double x_mid = coords[0] + 0.5 * d1;
      const double y_mid = coords[1] + 0.5 * d2;
      coords[2] += 0.5 * (x_mid * d2 - y_mid * d1);
      coords[0] += d1;
      coords[1] += d2;
      return;
    }
    case GroupKind::su2: {
      const Eigen::Vector4d step = quat_exp_pure(0.5 * gen_scale * d1, 0.5 * gen_scale * d2, 0.0);
      coords = quat_mul(coords, step);
      coords.normalize();
      return;
    }
    case GroupKind::sl2: {
      const double s = 0.5 * gen_scale;
      const Eigen::Matrix2d step = expm2_traceless(s * d1, s * d2, s * d2);
      Eigen::Matrix2d g;
      g << coords[0], coords[1], coords[2], coords[3];
      g = g * step;
      const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
      if (det > 0.25) g /= std::sqrt(det);
      coords << g(0, 0), g(0, 1), g(1, 0), g(1, 1);
      return;
    }
  }
}

std::vector<std::array<double, 2>> sample_increments(const PathConfig& config) {
  if (config.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  const double sqrt_h = std::sqrt(config.t_final / config.n_steps);
  std::vector<std::array<double, 2>> out(static_cast<size_t>(config.n_steps));
  for (int k = 0; k < config.n_steps; ++k) {
    const GaussPair g = gauss_increment(config.seed, static_cast<uint64_t>(config.path_index),
                                        static_cast<uint64_t>(k));
    out[static_cast<size_t>(k)] = {sqrt_h * g.g1, sqrt_h * g.g2};
  }
  return out;
}

Eigen::Matrix3d expm3(const Eigen::Matrix3d& a) {
  int squarings = 0;
  Eigen::Matrix3d scaled = a;
  while (scaled.cwiseAbs().sum() > 0.5 && squarings < 40) {
    scaled *= 0.5;
    ++squarings;
  }
  Eigen::Matrix3d result = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d term = Eigen::Matrix3d::Identity();
  for (int k = 1; k <= 16; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

Eigen::Vector2d PiecewiseControl::eval(double t) const {
  if (knots.empty()) return Eigen::Vector2d::Zero();
  size_t i = 0;
  while (i + 1 < knots.size() && t >= knots[i + 1]) ++i;
  return values[i];
}

Simulator::Simulator(const ModelSpace& model, const Rational& eps)
    : kind_(model.group()), bounds_(curvature_bounds(model)) {
  const TensorSet tensors = tensor_set(model, eps);
  const double rho_d = to_double(model.rho);
  gen_scale_ = std::sqrt(std::abs(rho_d));
  mats_.t_x = to_matrix3d(tensors.t_x);
  mats_.t_y = to_matrix3d(tensors.t_y);
  mats_.c = to_matrix3d(tensors.c);
  mats_.ito_q = 0.5 * (mats_.t_x * mats_.t_x + mats_.t_y * mats_.t_y);
  mats_.eps = to_double(eps);
  mats_.two_eps = 2.0 * mats_.eps;
  const double k_bound = std::max(0.0, to_double(bounds_.k));
  mats_.bound_rate = 0.5 * (k_bound + to_double(bounds_.kappa) / mats_.two_eps);
}

Simulator::Plan Simulator::plan(const PathConfig& config, bool compute_transport) const {
  if (config.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (!(config.t_final > 0)) throw std::invalid_argument("t_final must be positive");
  Plan p;
  p.t_final = config.t_final;
  p.n_steps = config.n_steps;
  p.scheme = config.scheme;
  p.h = config.t_final / config.n_steps;
  p.sqrt_h = std::sqrt(p.h);
  p.exp_ch_half = expm3(0.5 * p.h * mats_.c);
  p.euler_step = Eigen::Matrix3d::Identity() + p.h * (0.5 * mats_.c + mats_.ito_q);
  p.compute_transport = compute_transport;
  return p;
}

void Simulator::transport_step(const TransportMats& mats, const Plan& plan, Eigen::Matrix3d& m,
                               double d1, double d2) {
  switch (plan.scheme) {
    case Scheme::exp_splitting: {
      // The skew part A = -t_x d1 - t_y d2 satisfies A^3 = -theta^2 A with
      // theta^2 = -tr(A^2)/2, so its exponential has the Rodrigues form and
      // is an exact G_{2 eps} isometry.
      const Eigen::Matrix3d a = -(d1 * mats.t_x) - (d2 * mats.t_y);
      const Eigen::Matrix3d a2 = a * a;
      const double theta2 = std::max(0.0, -0.5 * a2.trace());
      double sinc, one_minus_cos;
      if (theta2 < 1e-12) {
        sinc = 1.0 - theta2 / 6.0;
        one_minus_cos = 0.5 - theta2 / 24.0;
      } else {
        const double theta = std::sqrt(theta2);
        sinc = std::sin(theta) / theta;
        one_minus_cos = (1.0 - std::cos(theta)) / theta2;
      }
      const Eigen::Matrix3d rot = Eigen::Matrix3d::Identity() + sinc * a + one_minus_cos * a2;
      m = m * rot * plan.exp_ch_half;
      return;
    }
    case Scheme::ito_euler: {
      Eigen::Matrix3d step = plan.euler_step;
      step -= d1 * mats.t_x + d2 * mats.t_y;
      m = m * step;
      return;
    }
    case Scheme::stratonovich_heun: {
      const Eigen::Matrix3d d =
          -(d1 * mats.t_x) - (d2 * mats.t_y) + (0.5 * plan.h) * mats.c;
      m = m * (Eigen::Matrix3d::Identity() + d + 0.5 * (d * d));
      return;
    }
  }
}

PathResult Simulator::run(const Plan& plan, uint64_t seed, int64_t path_index,
                          const GroupPoint* start, const PiecewiseControl* control,
                          bool track_bound, std::ostream* trace) const {
  PathResult result;
  result.endpoint = start ? *start : identity_point(kind_);
  Eigen::Matrix3d& m = result.transport;

  if (trace) {
    *trace << "time,c0,c1,c2,c3,m00,m01,m02,m10,m11,m12,m20,m21,m22\n";
  }

  double max_ratio2 = 0.0;
  for (int k = 0; k < plan.n_steps; ++k) {
    const double t_left = plan.h * k;
    const GaussPair g =
        gauss_increment(seed, static_cast<uint64_t>(path_index), static_cast<uint64_t>(k));
    const double d1 = plan.sqrt_h * g.g1;
    const double d2 = plan.sqrt_h * g.g2;

    if (control) {
      const Eigen::Vector2d w = control->eval(t_left);
      result.control_ito += w[0] * d1 + w[1] * d2;
      if (!w.isZero()) {
        // (M_s^T)^{-1} gamma'(s), sampled at the left endpoint.
        const double det = m.determinant();
        if (std::abs(det) < 1e-12) {
          result.ok = false;
          result.diagnostic = "singular transport matrix in ibp solve";
          return result;
        }
        const Eigen::Vector3d w3(w[0], w[1], 0.0);
        result.ibp_integral += plan.h * m.inverse().transpose() * w3;
      }
    }

    evolve_group(kind_, gen_scale_, result.endpoint.coords, d1, d2);
    if (plan.compute_transport) transport_step(mats_, plan, m, d1, d2);

    if (track_bound) {
      const double t_right = plan.h * (k + 1);
      const double growth2 = std::exp(2.0 * mats_.bound_rate * t_right);
      for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d col = m.col(i);
        const double norm2 = col[0] * col[0] + col[1] * col[1] + mats_.two_eps * col[2] * col[2];
        const double ref2 = growth2 * (i == 2 ? mats_.two_eps : 1.0);
        max_ratio2 = std::max(max_ratio2, norm2 / ref2);
      }
    }

    if (trace) {
      const auto& c = result.endpoint.coords;
      *trace << plan.h * (k + 1) << ',' << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3];
      for (int r = 0; r < 3; ++r)
        for (int cidx = 0; cidx < 3; ++cidx) *trace << ',' << m(r, cidx);
      *trace << '\n';
    }
  }
  result.max_bound_ratio = std::sqrt(max_ratio2);
  return result;
}

PathResult Simulator::run(const PathConfig& config, const GroupPoint* start,
                          const PiecewiseControl* control, bool track_bound,
                          std::ostream* trace) const {
  return run(plan(config), config.seed, config.path_index, start, control, track_bound, trace);
}

}  // namespace hypoheat
