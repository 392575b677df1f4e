#include "hypoheat/selftest.hpp"

#include <chrono>
#include <cmath>

#include "hypoheat/estimators.hpp"
#include "hypoheat/functions.hpp"
#include "hypoheat/heis.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/pbw.hpp"
#include "hypoheat/rng.hpp"
#include "hypoheat/sde.hpp"

namespace hypoheat {

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

uint64_t mix_seed(uint64_t master, uint64_t stream) {
  uint64_t x = master + stream * 0x9E3779B97F4A7C15ULL;
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

struct Ctx {
  SelftestOptions opts;

  int64_t paths(int64_t base) const {
    const auto scaled = static_cast<int64_t>(std::llround(static_cast<double>(base) * opts.path_scale));
    return std::max<int64_t>(64, scaled);
  }

  MCConfig mc(uint64_t stream, int64_t base_paths, int steps) const {
    MCConfig cfg;
    cfg.n_paths = paths(base_paths);
    cfg.seed = mix_seed(opts.seed, stream);
    cfg.batches = 16;
    cfg.path.n_steps = steps;
    cfg.path.scheme = Scheme::exp_splitting;
    cfg.threads = opts.threads;
    return cfg;
  }
};

CheckResult c1_commutation() {
  Timer timer;
  CheckResult res;
  res.id = 1;
  res.name = "symbolic intertwining dL = box d";

  const std::array<Rational, 4> rhos = {Rational(0), Rational(1), Rational(-1), Rational(5, 2)};
  const std::array<Rational, 3> epss = {Rational(1, 10), Rational(1), Rational(10)};
  bool all_zero = true;
  JsonValue grid = JsonValue::array();
  for (const auto& rho : rhos) {
    PbwAlgebra algebra(rho);
    for (const auto& eps : epss) {
      const auto residuals = algebra.commutation_residuals(eps);
      JsonValue item = JsonValue::object();
      item.set("rho", JsonValue::rational(rho));
      item.set("eps", JsonValue::rational(eps));
      JsonValue counts = JsonValue::array();
      bool zero = true;
      for (const auto& r : residuals) {
        counts.push_back(JsonValue::integer(static_cast<int64_t>(r.term_count())));
        zero = zero && r.is_zero();
      }
      item.set("residual_terms", std::move(counts));
      item.set("zero", JsonValue::boolean(zero));
      grid.push_back(std::move(item));
      all_zero = all_zero && zero;
    }
  }
  res.runtime_seconds = timer.seconds();
  const bool runtime_ok = res.runtime_seconds < 1.0;
  res.pass = all_zero && runtime_ok;
  res.details = JsonValue::object();
  res.details.set("grid", std::move(grid));
  res.details.set("all_zero", JsonValue::boolean(all_zero));
  res.details.set("runtime_ok", JsonValue::boolean(runtime_ok));
  return res;
}

CheckResult c2_bochner(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 2;
  res.name = "bochner-weitzenboeck residual";

  SmallRng rng(mix_seed(ctx.opts.seed, 2));
  const std::array<Rational, 3> epss = {Rational(1, 4), Rational(1), Rational(4)};
  int nonzero = 0;
  for (int i = 0; i < 100; ++i) {
    const OneFormPoly eta = random_one_form(rng, 3);
    for (const auto& eps : epss) {
      if (!bw_residual(eps, eta).is_zero()) ++nonzero;
    }
  }
  res.runtime_seconds = timer.seconds();
  const bool runtime_ok = res.runtime_seconds < 10.0;
  res.pass = nonzero == 0 && runtime_ok;
  res.details = JsonValue::object();
  res.details.set("forms", JsonValue::integer(100));
  res.details.set("eps_values", JsonValue::integer(3));
  res.details.set("nonzero_residuals", JsonValue::integer(nonzero));
  res.details.set("runtime_ok", JsonValue::boolean(runtime_ok));
  return res;
}

CheckResult c3_heat_oracle(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 3;
  res.name = "heat semigroup oracle";

  const HeisPoly x = HeisPoly::variable(0);
  const HeisPoly y = HeisPoly::variable(1);
  const HeisPoly z = HeisPoly::variable(2);

  bool fixed_ok = true;
  for (const Rational& t : {Rational(1), Rational(3, 7)}) {
    const HeisPoly radial = x * x + y * y;
    const HeisPoly expected_radial = radial + HeisPoly::constant(2 * t);
    fixed_ok = fixed_ok && heat_apply(t, radial) == expected_radial;

    const HeisPoly xz = x * z;
    const HeisPoly expected_xz = xz - (t / 2) * y;
    fixed_ok = fixed_ok && heat_apply(t, xz) == expected_xz;

    fixed_ok = fixed_ok && heat_apply(t, x) == x;
  }

  SmallRng rng(mix_seed(ctx.opts.seed, 3));
  const Rational s(1, 3), t(3, 5);
  int semigroup_failures = 0;
  for (int i = 0; i < 50; ++i) {
    const HeisPoly f = random_heis_poly(rng, 4);
    if (!(heat_apply(s, heat_apply(t, f)) == heat_apply(s + t, f))) ++semigroup_failures;
  }

  res.pass = fixed_ok && semigroup_failures == 0;
  res.runtime_seconds = timer.seconds();
  res.details = JsonValue::object();
  res.details.set("fixed_identities", JsonValue::boolean(fixed_ok));
  res.details.set("semigroup_failures", JsonValue::integer(semigroup_failures));
  return res;
}

CheckResult c4_bismut(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 4;
  res.name = "bismut derivative vs oracle";

  const ModelSpace model = build_model(Rational(0));
  const TestFunction f = make_function(model, "xz");
  const Rational t(1);
  const MCConfig mc = ctx.mc(4, 100000, 500);

  const EstimateReport rep1 = estimate_dptf(model, Rational(1), f, t, mc);
  const EstimateReport rep_half = estimate_dptf(model, Rational(1, 2), f, t, mc);
  const EstimateReport rep2 = estimate_dptf(model, Rational(2), f, t, mc);

  const std::array<double, 3> target = {0.0, -0.5, 0.0};
  bool anchor_ok = true;
  for (int i = 0; i < 3; ++i)
    anchor_ok = anchor_ok && std::abs(rep1.value[static_cast<size_t>(i)] - target[static_cast<size_t>(i)]) <=
                                 4.0 * rep1.std_error[static_cast<size_t>(i)];

  auto agree = [](const EstimateReport& a, const EstimateReport& b) {
    bool ok = true;
    for (size_t i = 0; i < 3; ++i) {
      const double se = std::hypot(a.std_error[i], b.std_error[i]);
      ok = ok && std::abs(a.value[i] - b.value[i]) <= 4.0 * se;
    }
    return ok;
  };
  const bool eps_ok = agree(rep1, rep_half) && agree(rep1, rep2);

  res.pass = anchor_ok && eps_ok;
  res.runtime_seconds = timer.seconds();
  res.details = JsonValue::object();
  res.details.set("estimate_eps1", estimate_json(rep1));
  res.details.set("estimate_eps1/2", estimate_json(rep_half));
  res.details.set("estimate_eps2", estimate_json(rep2));
  res.details.set("anchor_ok", JsonValue::boolean(anchor_ok));
  res.details.set("eps_independent", JsonValue::boolean(eps_ok));
  return res;
}

CheckResult c5_levy_area(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 5;
  res.name = "levy area moments";

  const ModelSpace model = build_model(Rational(0));
  Simulator sim(model, Rational(1));

  MCConfig mc = ctx.mc(5, 100000, 500);
  mc.path.t_final = 1.0;
  PathFunctional fn;
  fn.n_obs = 2;
  fn.needs_transport = false;
  fn.eval = [](const PathResult& pr, double* out) {
    const double z = pr.endpoint.coords[2];
    out[0] = z;
    out[1] = z * z;
    return true;
  };
  const EnsembleResult moments = run_ensemble(sim, mc, fn);
  const bool mean_ok = std::abs(moments.mean(0)) <= 4.0 * moments.se(0);
  const bool var_ok = std::abs(moments.mean(1) - 0.25) <= 4.0 * moments.se(1);

  // Refinement-coupled bias study: the three discretizations share one fine
  // Brownian path, so the paired second-moment differences are decisive.
  MCConfig coupled = ctx.mc(55, 200000, 800);
  const int fine_steps = 800;
  const double h_fine = 1.0 / fine_steps;
  const double sqrt_h = std::sqrt(h_fine);
  const uint64_t seed = coupled.seed;
  auto coupled_eval = [&](int64_t path, double* out) {
    std::array<double, 800> inc1, inc2;
    for (int k = 0; k < fine_steps; ++k) {
      const GaussPair g = gauss_increment(seed, static_cast<uint64_t>(path), static_cast<uint64_t>(k));
      inc1[static_cast<size_t>(k)] = sqrt_h * g.g1;
      inc2[static_cast<size_t>(k)] = sqrt_h * g.g2;
    }
    auto z_at = [&](int factor) {
      double xx = 0, yy = 0, zz = 0;
      for (int m = 0; m < fine_steps / factor; ++m) {
        double d1 = 0, d2 = 0;
        for (int j = 0; j < factor; ++j) {
          d1 += inc1[static_cast<size_t>(m * factor + j)];
          d2 += inc2[static_cast<size_t>(m * factor + j)];
        }
        zz += 0.5 * ((xx + 0.5 * d1) * d2 - (yy + 0.5 * d2) * d1);
        xx += d1;
        yy += d2;
      }
      return zz;
    };
    const double z50 = z_at(16), z200 = z_at(4), z800 = z_at(1);
    out[0] = z200 * z200 - z50 * z50;
    out[1] = z800 * z800 - z200 * z200;
    return true;
  };
  const EnsembleResult bias = run_ensemble_raw(coupled, 2, coupled_eval);
  const bool monotone = bias.mean(0) > 0.0 && bias.mean(1) > 0.0;

  res.pass = mean_ok && var_ok && monotone;
  res.runtime_seconds = timer.seconds();
  res.details = JsonValue::object();
  res.details.set("mean_z", JsonValue::number(moments.mean(0)));
  res.details.set("se_z", JsonValue::number(moments.se(0)));
  res.details.set("mean_z2", JsonValue::number(moments.mean(1)));
  res.details.set("se_z2", JsonValue::number(moments.se(1)));
  res.details.set("bias_gap_50_200", JsonValue::number(bias.mean(0)));
  res.details.set("bias_gap_200_800", JsonValue::number(bias.mean(1)));
  res.details.set("bias_gap_se", JsonValue::number(std::hypot(bias.se(0), bias.se(1))));
  res.details.set("mean_ok", JsonValue::boolean(mean_ok));
  res.details.set("var_ok", JsonValue::boolean(var_ok));
  res.details.set("bias_monotone", JsonValue::boolean(monotone));
  return res;
}

CheckResult c6_pathwise_bound(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 6;
  res.name = "transport pathwise bound";

  // Exact per-step bound for the splitting scheme; the tolerance only covers
  // floating-point roundoff accumulated over the path.
  const double tol = 1.0 + 1e-10;
  JsonValue detail = JsonValue::object();
  bool ok = true;
  const struct {
    const char* name;
    Rational rho;
    Rational eps;
  } cases[] = {{"heisenberg", Rational(0), Rational(1)}, {"su2", Rational(1), Rational(3, 2)}};
  for (const auto& c : cases) {
    Simulator sim(build_model(c.rho), c.eps);
    MCConfig mc = ctx.mc(6, 10000, 500);
    mc.path.t_final = 1.0;
    PathFunctional fn;
    fn.n_obs = 1;
    fn.track_bound = true;
    fn.eval = [](const PathResult& pr, double* out) {
      out[0] = pr.max_bound_ratio;
      return true;
    };
    const EnsembleResult r = run_ensemble(sim, mc, fn);
    const bool case_ok = r.max_bound_ratio <= tol;
    ok = ok && case_ok;
    JsonValue item = JsonValue::object();
    item.set("max_ratio", JsonValue::number(r.max_bound_ratio));
    item.set("paths", JsonValue::integer(r.n_included));
    item.set("ok", JsonValue::boolean(case_ok));
    detail.set(c.name, std::move(item));
  }
  res.pass = ok;
  res.runtime_seconds = timer.seconds();
  res.details = std::move(detail);
  return res;
}

CheckResult c7_inequalities(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 7;
  res.name = "gradient/poincare/log-sobolev suite";

  const Rational eps(1), t(1);
  bool all = true;
  JsonValue detail = JsonValue::object();
  int stream = 70;
  for (const char* model_name : {"heisenberg", "su2"}) {
    const ModelSpace model = *parse_model(model_name);
    JsonValue section = JsonValue::object();

    for (const char* fname : {"x", "z", "xz"}) {
      const MCConfig mc = ctx.mc(static_cast<uint64_t>(stream++), 100000, 500);
      const InequalityReport rep =
          check_gradient_bound(model, eps, make_function(model, fname), t, mc);
      all = all && rep.pass;
      section.set("gradient[" + std::string(fname) + "]", inequality_json(rep));
    }

    {
      const MCConfig mc = ctx.mc(static_cast<uint64_t>(stream++), 100000, 500);
      const InequalityReport rep = check_poincare(model, eps, make_function(model, "x"), t, mc);
      bool anchor_ok = true;
      if (model.group() == GroupKind::heisenberg) {
        // Exact oracle variance 1 against the closed-form rate 2 (e^{1/2} - 1).
        anchor_ok = std::abs(rep.lhs - 1.0) < 1e-12 &&
                    std::abs(rep.rhs - 2.0 * std::expm1(0.5)) < 1e-9;
      }
      all = all && rep.pass && anchor_ok;
      JsonValue v = inequality_json(rep);
      v.set("anchor_ok", JsonValue::boolean(anchor_ok));
      section.set("poincare[x]", std::move(v));
    }

    {
      const MCConfig mc = ctx.mc(static_cast<uint64_t>(stream++), 100000, 500);
      const InequalityReport rep =
          check_logsobolev(model, eps, make_function(model, "1+x2/10"), t, mc);
      all = all && rep.pass;
      section.set("logsobolev[1+x2/10]", inequality_json(rep));
    }

    detail.set(model_name, std::move(section));
  }
  res.pass = all;
  res.runtime_seconds = timer.seconds();
  res.details = std::move(detail);
  return res;
}

CheckResult c8_ibp(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 8;
  res.name = "integration by parts";

  const ModelSpace model = build_model(Rational(0));
  const Rational eps(1), t(1);
  JsonValue detail = JsonValue::object();
  bool all = true;

  {
    const MCConfig mc = ctx.mc(80, 100000, 500);
    const PiecewiseControl control = PiecewiseControl::constant({1.0, 0.0});
    const InequalityReport rep =
        check_ibp(model, eps, make_function(model, "x"), t, control, mc);
    // Analytic anchor: E[x_1 B^1_1] = 1.
    const bool anchor_ok = std::abs(rep.lhs - 1.0) <= 4.0 * rep.lhs_se;
    all = all && rep.pass && anchor_ok;
    JsonValue v = inequality_json(rep);
    v.set("anchor_ok", JsonValue::boolean(anchor_ok));
    detail.set("f=x,gamma=(1,0)", std::move(v));
  }
  {
    const MCConfig mc = ctx.mc(81, 100000, 500);
    const PiecewiseControl control = PiecewiseControl::constant({0.0, 1.0});
    const InequalityReport rep =
        check_ibp(model, eps, make_function(model, "xz"), t, control, mc);
    all = all && rep.pass;
    detail.set("f=xz,gamma=(0,1)", inequality_json(rep));
  }

  res.pass = all;
  res.runtime_seconds = timer.seconds();
  res.details = std::move(detail);
  return res;
}

CheckResult c9_decay(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 9;
  res.name = "su2 decay at optimal eps";

  const ModelSpace model = build_model(Rational(1));
  MCConfig mc = ctx.mc(9, 50000, 500);
  const DecayReport decay = check_decay(model, Eigen::Vector3d(1, 0, 0), {1.0, 2.0, 4.0}, mc);
  const bool constants_ok = decay.eps_opt == Rational(3, 2) &&
                            std::abs(decay.rate - 1.0 / 3.0) < 1e-15;
  res.pass = decay.pass && constants_ok;
  res.runtime_seconds = timer.seconds();
  res.details = decay_json(decay);
  res.details.set("constants_ok", JsonValue::boolean(constants_ok));
  return res;
}

CheckResult c10_determinism_probe(const Ctx& ctx) {
  Timer timer;
  CheckResult res;
  res.id = 10;
  res.name = "determinism probe (in-process)";

  const ModelSpace model = build_model(Rational(0));
  const TestFunction f = make_function(model, "xz");
  MCConfig mc = ctx.mc(10, 20000, 200);
  mc.threads = 1;
  const std::string serial = estimate_json(estimate_dptf(model, Rational(1), f, Rational(1), mc)).dump();
  mc.threads = 4;
  const std::string parallel = estimate_json(estimate_dptf(model, Rational(1), f, Rational(1), mc)).dump();

  res.pass = serial == parallel;
  res.runtime_seconds = timer.seconds();
  res.details = JsonValue::object();
  res.details.set("bytes_equal", JsonValue::boolean(res.pass));
  return res;
}

}  // namespace

SuiteReport selftest(const SelftestOptions& options) {
  Ctx ctx{options};
  SuiteReport report;
  report.suite = "hypoheat-selftest";
  report.seed = options.seed;
  report.checks.push_back(c1_commutation());
  report.checks.push_back(c2_bochner(ctx));
  report.checks.push_back(c3_heat_oracle(ctx));
  report.checks.push_back(c4_bismut(ctx));
  report.checks.push_back(c5_levy_area(ctx));
  report.checks.push_back(c6_pathwise_bound(ctx));
  report.checks.push_back(c7_inequalities(ctx));
  report.checks.push_back(c8_ibp(ctx));
  report.checks.push_back(c9_decay(ctx));
  report.checks.push_back(c10_determinism_probe(ctx));
  return report;
}

}  // namespace hypoheat
