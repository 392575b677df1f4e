#include <doctest.h>

#include <cmath>

#include "hypoheat/estimators.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/rng.hpp"
#include "hypoheat/sde.hpp"

using namespace hypoheat;

namespace {

PathConfig quick_config(int steps, double t = 1.0) {
  PathConfig c;
  c.t_final = t;
  c.n_steps = steps;
  return c;
}

// Second moment S_t = E[M_t^T G M_t] solves the matrix ODE
//   S' = D^T S + S D + t_x^T S t_x + t_y^T S t_y,   D = c/2 + (t_x^2+t_y^2)/2,
// integrated here with RK4 as an independent oracle for the transport law.
Eigen::Matrix3d second_moment_ode(const TransportMats& m, const Eigen::Matrix3d& g, double t,
                                  int steps) {
  const Eigen::Matrix3d d = 0.5 * m.c + m.ito_q;
  auto rhs = [&](const Eigen::Matrix3d& s) -> Eigen::Matrix3d {
    return d.transpose() * s + s * d + m.t_x.transpose() * s * m.t_x +
           m.t_y.transpose() * s * m.t_y;
  };
  Eigen::Matrix3d s = g;
  const double h = t / steps;
  for (int k = 0; k < steps; ++k) {
    const Eigen::Matrix3d k1 = rhs(s);
    const Eigen::Matrix3d k2 = rhs(s + 0.5 * h * k1);
    const Eigen::Matrix3d k3 = rhs(s + 0.5 * h * k2);
    const Eigen::Matrix3d k4 = rhs(s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("sde");

TEST_CASE("group steps") {
  SUBCASE("zero increment is a no-op") {
    for (GroupKind kind : {GroupKind::heisenberg, GroupKind::su2, GroupKind::sl2}) {
      GroupPoint p = identity_point(kind);
      const Eigen::Vector4d before = p.coords;
      evolve_group(kind, 1.0, p.coords, 0.0, 0.0);
      CHECK(p.coords == before);
    }
  }

  SUBCASE("first Heisenberg step from the origin lands at (a, b, 0)") {
    GroupPoint p = identity_point(GroupKind::heisenberg);
    evolve_group(GroupKind::heisenberg, 0.0, p.coords, 0.3, -0.7);
    CHECK(p.coords[0] == 0.3);
    CHECK(p.coords[1] == -0.7);
    CHECK(p.coords[2] == 0.0);
  }

  SUBCASE("group constraints hold over 1000 steps") {
    GroupPoint q = identity_point(GroupKind::su2);
    GroupPoint m = identity_point(GroupKind::sl2);
    for (uint64_t k = 0; k < 1000; ++k) {
      const GaussPair g = gauss_increment(99, 1, k);
      const double d1 = 0.0316 * g.g1, d2 = 0.0316 * g.g2;
      evolve_group(GroupKind::su2, 1.0, q.coords, d1, d2);
      evolve_group(GroupKind::sl2, 1.0, m.coords, d1, d2);
      CHECK(std::abs(q.coords.norm() - 1.0) <= 1e-12);
      const double det = m.coords[0] * m.coords[3] - m.coords[1] * m.coords[2];
      CHECK(std::abs(det - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("sampled increments are deterministic with variance h") {
  PathConfig cfg = quick_config(400, 2.0);
  cfg.seed = 77;
  cfg.path_index = 5;
  const auto a = sample_increments(cfg);
  const auto b = sample_increments(cfg);
  CHECK(a == b);

  double sum = 0, sum2 = 0;
  const int reps = 500;
  for (int p = 0; p < reps; ++p) {
    cfg.path_index = p;
    for (const auto& inc : sample_increments(cfg)) {
      sum += inc[0] + inc[1];
      sum2 += inc[0] * inc[0] + inc[1] * inc[1];
    }
  }
  const double n = 2.0 * reps * cfg.n_steps;
  const double h = cfg.t_final / cfg.n_steps;
  CHECK(std::abs(sum / n) < 4.0 * std::sqrt(h / n));
  CHECK(std::abs(sum2 / n - h) < 4.0 * h * std::sqrt(2.0 / n));
}

TEST_CASE("matrix exponential helper") {
  Eigen::Matrix3d d = Eigen::Matrix3d::Zero();
  d.diagonal() << 0.3, -1.7, 0.0;
  const Eigen::Matrix3d e = expm3(d);
  CHECK(e(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-1.7)).epsilon(1e-14));
  CHECK(e(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(e(0, 1)) < 1e-16);
}

TEST_CASE("transport steps") {
  // rho = 1/(2 eps) makes the drift c vanish, isolating the skew factor.
  const Rational eps(1);
  Simulator sim(build_model(Rational(1, 2)), eps);
  CHECK(sim.mats().c.cwiseAbs().maxCoeff() == 0.0);

  PathConfig cfg = quick_config(10);
  SUBCASE("zero increment, zero drift: heun and splitting do not move") {
    for (Scheme s : {Scheme::exp_splitting, Scheme::stratonovich_heun}) {
      cfg.scheme = s;
      const auto plan = sim.plan(cfg);
      Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
      Simulator::transport_step(sim.mats(), plan, m, 0.0, 0.0);
      CHECK((m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("splitting factor agrees with the series exponential") {
    cfg.scheme = Scheme::exp_splitting;
    const auto plan = sim.plan(cfg);
    SmallRng rng(55);
    for (int i = 0; i < 20; ++i) {
      const double d1 = rng.uniform01() - 0.5, d2 = rng.uniform01() - 0.5;
      Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
      Simulator::transport_step(sim.mats(), plan, m, d1, d2);
      const Eigen::Matrix3d ref = expm3(-(d1 * sim.mats().t_x) - (d2 * sim.mats().t_y));
      CHECK((m - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  SUBCASE("skew factor is a G_{2 eps} isometry") {
    cfg.scheme = Scheme::exp_splitting;
    cfg.n_steps = 200;
    const PathResult pr = sim.run(cfg);
    const Eigen::Vector3d a(0.3, -1.0, 0.7);
    const Eigen::Vector3d b = pr.transport * a;
    const double norm_a = std::sqrt(a[0] * a[0] + a[1] * a[1] + 2.0 * a[2] * a[2]);
    const double norm_b = std::sqrt(b[0] * b[0] + b[1] * b[1] + 2.0 * b[2] * b[2]);
    CHECK(norm_b == doctest::Approx(norm_a).epsilon(1e-11));
  }
}

TEST_CASE("single splitting step obeys the exact growth factor") {
  // eps = 1/2 makes G_{2 eps} the identity, so basis vectors have unit norm
  // and the drift factor bounds the growth by exp(h / (4 eps)) exactly.
  const Rational eps(1, 2);
  Simulator sim(build_model(Rational(0)), eps);  // c = diag(1/(2 eps), 1/(2 eps), 0)
  PathConfig cfg = quick_config(50);
  const auto plan = sim.plan(cfg);
  const double factor = std::exp(plan.h / (4.0 * to_double(eps)));

  SmallRng rng(66);
  for (int i = 0; i < 30; ++i) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    Simulator::transport_step(sim.mats(), plan, m, rng.uniform01() - 0.5, rng.uniform01() - 0.5);
    for (int col = 0; col < 3; ++col) {
      CHECK(m.col(col).norm() <= factor * (1.0 + 1e-13));
    }
  }
}

TEST_CASE("weak scheme consistency against the mean-flow exponential") {
  // E[M_t] = exp(t (c/2 + q)) for the exact flow; all three schemes must
  // agree with it within Monte Carlo error as h shrinks.
  const ModelSpace model = build_model(Rational(0));
  const Rational eps(1);
  Simulator sim(model, eps);
  const double t = 0.5;
  const Eigen::Matrix3d oracle = expm3(t * (0.5 * sim.mats().c + sim.mats().ito_q));

  for (Scheme scheme : {Scheme::exp_splitting, Scheme::ito_euler, Scheme::stratonovich_heun}) {
    MCConfig mc;
    mc.n_paths = 20000;
    mc.seed = 1234;
    mc.batches = 16;
    mc.threads = 2;
    mc.path = quick_config(200, t);
    mc.path.scheme = scheme;

    PathFunctional fn;
    fn.n_obs = 9;
    fn.eval = [](const PathResult& pr, double* out) {
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[3 * r + c] = pr.transport(r, c);
      return true;
    };
    const EnsembleResult res = run_ensemble(sim, mc, fn);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const int j = 3 * r + c;
        const double tol = 4.0 * res.se(j) + 0.002;  // MC band plus O(h) bias slack
        CHECK(std::abs(res.mean(j) - oracle(r, c)) <= tol);
      }
  }
}

TEST_CASE("second moment matches the Lyapunov oracle on su2") {
  const ModelSpace model = build_model(Rational(1));
  const Rational eps(3, 2);
  Simulator sim(model, eps);
  const double eps_d = 1.5;
  const Eigen::Matrix3d g_eps = Eigen::Vector3d(1, 1, eps_d).asDiagonal();

  const double t = 1.0;
  const Eigen::Matrix3d s_oracle = second_moment_ode(sim.mats(), g_eps, t, 400);
  // Closed form for the (0,0) entry: (e^{-t/3} + e^{-4t/3}) / 2.
  const double closed = 0.5 * (std::exp(-t / 3.0) + std::exp(-4.0 * t / 3.0));
  CHECK(s_oracle(0, 0) == doctest::Approx(closed).epsilon(1e-9));

  MCConfig mc;
  mc.n_paths = 30000;
  mc.seed = 4321;
  mc.batches = 16;
  mc.threads = 2;
  mc.path = quick_config(250, t);

  PathFunctional fn;
  fn.n_obs = 1;
  fn.eval = [&](const PathResult& pr, double* out) {
    const Eigen::Vector3d v = pr.transport.col(0);
    out[0] = v[0] * v[0] + v[1] * v[1] + eps_d * v[2] * v[2];
    return true;
  };
  const EnsembleResult res = run_ensemble(sim, mc, fn);
  CHECK(std::abs(res.mean(0) - closed) <= 4.0 * res.se(0) + 0.01);
}

TEST_CASE("pathwise transport bound for the splitting scheme") {
  Simulator sim(build_model(Rational(0)), Rational(1));
  PathConfig cfg = quick_config(100);
  cfg.seed = 31337;
  for (int p = 0; p < 200; ++p) {
    cfg.path_index = p;
    const PathResult pr = sim.run(cfg, nullptr, nullptr, true);
    CHECK(pr.max_bound_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("paths are bit-reproducible and well-conditioned") {
  Simulator sim(build_model(Rational(1)), Rational(1));
  PathConfig cfg = quick_config(300);
  cfg.seed = 2718;
  cfg.path_index = 12;
  const PathResult a = sim.run(cfg);
  const PathResult b = sim.run(cfg);
  CHECK(a.endpoint.coords == b.endpoint.coords);
  CHECK(a.transport == b.transport);

  cfg.path_index = 13;
  const PathResult c = sim.run(cfg);
  CHECK(a.endpoint.coords != c.endpoint.coords);

  int bad = 0;
  for (int p = 0; p < 2000; ++p) {
    cfg.path_index = p;
    const PathResult pr = sim.run(cfg);
    if (!pr.ok || std::abs(pr.transport.determinant()) < 1e-8) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("control accumulation") {
  Simulator sim(build_model(Rational(0)), Rational(1));

  SUBCASE("zero control leaves both accumulators at zero") {
    const PiecewiseControl zero = PiecewiseControl::constant({0.0, 0.0});
    PathConfig cfg = quick_config(50);
    const PathResult pr = sim.run(cfg, nullptr, &zero);
    CHECK(pr.control_ito == 0.0);
    CHECK(pr.ibp_integral.norm() == 0.0);
  }

  SUBCASE("one step reproduces the single increment") {
    const PiecewiseControl gamma = PiecewiseControl::constant({1.0, 0.0});
    PathConfig cfg = quick_config(1, 0.25);
    cfg.seed = 9;
    cfg.path_index = 3;
    const auto inc = sample_increments(cfg);
    const PathResult pr = sim.run(cfg, nullptr, &gamma);
    CHECK(pr.control_ito == doctest::Approx(inc[0][0]).epsilon(1e-15));
    // M_0 = Id, so the integral is h * gamma'.
    CHECK(pr.ibp_integral[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pr.ibp_integral[1] == 0.0);
  }

  SUBCASE("piecewise values switch at the knots") {
    PiecewiseControl two;
    two.knots = {0.0, 0.5};
    two.values = {{1.0, 0.0}, {0.0, 2.0}};
    CHECK(two.eval(0.1) == Eigen::Vector2d(1.0, 0.0));
    CHECK(two.eval(0.5) == Eigen::Vector2d(0.0, 2.0));
    CHECK(two.eval(0.9) == Eigen::Vector2d(0.0, 2.0));
  }
}

TEST_SUITE_END();
