#include "hypoheat/estimators.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hypoheat {

namespace {

struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double value) {
    const double t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      comp += (sum - t) + value;
    } else {
      comp += (value - t) + sum;
    }
    sum = t;
  }

  double total() const { return sum + comp; }
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int pick_threads(int requested, int batches) {
  int t = requested;
  if (t <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    t = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
  }
  return std::max(1, std::min(t, batches));
}

double norm_g(const Eigen::Vector3d& v, double vertical_weight) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + vertical_weight * v[2] * v[2]);
}

double norm2_g(const Eigen::Vector3d& v, double vertical_weight) {
  return v[0] * v[0] + v[1] * v[1] + vertical_weight * v[2] * v[2];
}

// Poincare/log-Sobolev rate constant (e^{Ct} - 1)/C with the C -> 0 limit t.
double rate_constant(double c, double t) {
  if (std::abs(c) < 1e-12) return t;
  return std::expm1(c * t) / c;
}

std::array<double, 4> point_array(const GroupPoint& p) {
  return {p.coords[0], p.coords[1], p.coords[2], p.coords[3]};
}

}  // namespace

double EnsembleResult::se(int j) const {
  const int b = static_cast<int>(batch_means.size());
  if (b < 2) return 0.0;
  double mean_of_means = 0.0;
  for (const auto& m : batch_means) mean_of_means += m[static_cast<size_t>(j)];
  mean_of_means /= b;
  double ss = 0.0;
  for (const auto& m : batch_means) {
    const double d = m[static_cast<size_t>(j)] - mean_of_means;
    ss += d * d;
  }
  return std::sqrt(ss / (static_cast<double>(b) * (b - 1)));
}

double EnsembleResult::se_stat(const std::function<double(const std::vector<double>&)>& stat) const {
  const int b = static_cast<int>(batch_means.size());
  if (b < 2) return 0.0;
  std::vector<double> values;
  values.reserve(static_cast<size_t>(b));
  for (const auto& m : batch_means) values.push_back(stat(m));
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= b;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (static_cast<double>(b) * (b - 1)));
}

namespace {

// status: 0 included, 1 rejected, 2 aborted.
struct PathOutcome {
  int status = 0;
  double bound_ratio = 0.0;
};

EnsembleResult ensemble_core(const MCConfig& mc, int n_obs,
                             const std::function<void(int64_t, double*, PathOutcome&)>& per_path) {
  if (mc.batches < 2) throw std::invalid_argument("batches must be >= 2");
  if (mc.n_paths < mc.batches) throw std::invalid_argument("n_paths must be >= batches");

  const int b_count = mc.batches;
  const int64_t base = mc.n_paths / b_count;
  const int64_t rem = mc.n_paths % b_count;

  struct BatchAccum {
    std::vector<NeumaierSum> sums;
    int64_t included = 0;
    int64_t rejected = 0;
    int64_t aborted = 0;
    double max_bound_ratio = 0.0;
  };
  std::vector<BatchAccum> accums(static_cast<size_t>(b_count));
  for (auto& a : accums) a.sums.resize(static_cast<size_t>(n_obs));

  auto run_batch = [&](int b) {
    BatchAccum& acc = accums[static_cast<size_t>(b)];
    const int64_t begin = b * base + std::min<int64_t>(b, rem);
    const int64_t end = begin + base + (b < rem ? 1 : 0);
    std::vector<double> out(static_cast<size_t>(n_obs));
    for (int64_t p = begin; p < end; ++p) {
      PathOutcome outcome;
      per_path(p, out.data(), outcome);
      acc.max_bound_ratio = std::max(acc.max_bound_ratio, outcome.bound_ratio);
      if (outcome.status == 2) {
        ++acc.aborted;
        continue;
      }
      if (outcome.status == 1) {
        ++acc.rejected;
        continue;
      }
      ++acc.included;
      for (int j = 0; j < n_obs; ++j) acc.sums[static_cast<size_t>(j)].add(out[static_cast<size_t>(j)]);
    }
  };

  const int threads = pick_threads(mc.threads, b_count);
  if (threads == 1) {
    for (int b = 0; b < b_count; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int tid = 0; tid < threads; ++tid) {
      pool.emplace_back([&, tid] {
        for (int b = tid; b < b_count; b += threads) run_batch(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  EnsembleResult result;
  result.means.assign(static_cast<size_t>(n_obs), 0.0);
  result.batch_means.resize(static_cast<size_t>(b_count));
  std::vector<NeumaierSum> totals(static_cast<size_t>(n_obs));
  for (int b = 0; b < b_count; ++b) {
    const BatchAccum& acc = accums[static_cast<size_t>(b)];
    result.n_included += acc.included;
    result.rejected += acc.rejected;
    result.aborted += acc.aborted;
    result.max_bound_ratio = std::max(result.max_bound_ratio, acc.max_bound_ratio);
    auto& bm = result.batch_means[static_cast<size_t>(b)];
    bm.assign(static_cast<size_t>(n_obs), 0.0);
    for (int j = 0; j < n_obs; ++j) {
      const double s = acc.sums[static_cast<size_t>(j)].total();
      totals[static_cast<size_t>(j)].add(s);
      if (acc.included > 0) bm[static_cast<size_t>(j)] = s / static_cast<double>(acc.included);
    }
  }
  if (result.n_included > 0) {
    for (int j = 0; j < n_obs; ++j)
      result.means[static_cast<size_t>(j)] =
          totals[static_cast<size_t>(j)].total() / static_cast<double>(result.n_included);
  }
  return result;
}

}  // namespace

EnsembleResult run_ensemble(const Simulator& sim, const MCConfig& mc, const PathFunctional& fn,
                            const GroupPoint* start) {
  const Simulator::Plan plan = sim.plan(mc.path, fn.needs_transport);
  return ensemble_core(mc, fn.n_obs, [&](int64_t p, double* out, PathOutcome& outcome) {
    const PathResult pr = sim.run(plan, mc.seed, p, start, fn.control, fn.track_bound);
    if (!pr.ok) {
      outcome.status = 2;
      return;
    }
    outcome.bound_ratio = pr.max_bound_ratio;
    if (!fn.eval(pr, out)) outcome.status = 1;
  });
}

EnsembleResult run_ensemble_raw(const MCConfig& mc, int n_obs,
                                const std::function<bool(int64_t, double*)>& per_path) {
  return ensemble_core(mc, n_obs, [&](int64_t p, double* out, PathOutcome& outcome) {
    if (!per_path(p, out)) outcome.status = 1;
  });
}

EstimateReport estimate_ptf(const ModelSpace& model, const Rational& eps, const TestFunction& f,
                            const Rational& t, const MCConfig& mc, const GroupPoint* x0) {
  Timer timer;
  Simulator sim(model, eps);
  MCConfig cfg = mc;
  cfg.path.t_final = to_double(t);
  PathFunctional fn;
  fn.n_obs = 1;
  fn.needs_transport = false;
  fn.eval = [&](const PathResult& pr, double* out) {
    out[0] = f.eval(pr.endpoint);
    return true;
  };
  const EnsembleResult r = run_ensemble(sim, cfg, fn, x0);
  EstimateReport report;
  report.value = {r.mean(0)};
  report.std_error = {r.se(0)};
  report.n_paths = r.n_included;
  report.runtime_seconds = timer.seconds();
  return report;
}

EstimateReport estimate_dptf(const ModelSpace& model, const Rational& eps, const TestFunction& f,
                             const Rational& t, const MCConfig& mc, const GroupPoint* x0) {
  Timer timer;
  Simulator sim(model, eps);
  MCConfig cfg = mc;
  cfg.path.t_final = to_double(t);
  PathFunctional fn;
  fn.n_obs = 3;
  fn.eval = [&](const PathResult& pr, double* out) {
    const Eigen::Vector3d v = pr.transport * f.dframe(pr.endpoint);
    out[0] = v[0];
    out[1] = v[1];
    out[2] = v[2];
    return true;
  };
  const EnsembleResult r = run_ensemble(sim, cfg, fn, x0);
  EstimateReport report;
  report.value = {r.mean(0), r.mean(1), r.mean(2)};
  report.std_error = {r.se(0), r.se(1), r.se(2)};
  report.n_paths = r.n_included;
  report.runtime_seconds = timer.seconds();
  return report;
}

InequalityReport check_gradient_bound(const ModelSpace& model, const Rational& eps,
                                      const TestFunction& f, const Rational& t, const MCConfig& mc,
                                      const GroupPoint* x0) {
  Timer timer;
  Simulator sim(model, eps);
  MCConfig cfg = mc;
  cfg.path.t_final = to_double(t);
  const double eps_d = to_double(eps);
  const double two_eps = 2.0 * eps_d;
  const double rate = std::exp(sim.mats().bound_rate * cfg.path.t_final);

  const bool use_oracle = model.group() == GroupKind::heisenberg && f.exact.has_value();

  PathFunctional fn;
  fn.n_obs = use_oracle ? 1 : 4;
  fn.needs_transport = !use_oracle;
  fn.eval = [&](const PathResult& pr, double* out) {
    out[0] = norm_g(f.dframe(pr.endpoint), two_eps);
    if (!use_oracle) {
      const Eigen::Vector3d v = pr.transport * f.dframe(pr.endpoint);
      out[1] = v[0];
      out[2] = v[1];
      out[3] = v[2];
    }
    return true;
  };
  const GroupPoint start = x0 ? *x0 : identity_point(model.group());
  const EnsembleResult r = run_ensemble(sim, cfg, fn, &start);

  InequalityReport rep;
  rep.name = "gradient[" + f.name + "]";
  if (use_oracle) {
    const OneFormPoly grad = exterior_d(heat_apply(t, *f.exact));
    const auto pt = point_array(start);
    const std::array<double, 3> heis_pt = {pt[0], pt[1], pt[2]};
    const Eigen::Vector3d v(grad.f1.eval(heis_pt), grad.f2.eval(heis_pt), grad.g.eval(heis_pt));
    rep.lhs = norm_g(v, two_eps);
    rep.lhs_se = 0.0;
  } else {
    const Eigen::Vector3d v(r.mean(1), r.mean(2), r.mean(3));
    rep.lhs = norm_g(v, two_eps);
    rep.lhs_se = r.se_stat([&](const std::vector<double>& m) {
      return norm_g(Eigen::Vector3d(m[1], m[2], m[3]), two_eps);
    });
  }
  rep.rhs = rate * r.mean(0);
  rep.rhs_se = rate * r.se(0);
  rep.margin = rep.rhs - rep.lhs;
  rep.combined_se = std::hypot(rep.lhs_se, rep.rhs_se);
  rep.pass = rep.margin + 4.0 * rep.combined_se >= 0.0;
  rep.n_paths = r.n_included;
  rep.constants = {{"K", std::max(0.0, to_double(sim.bounds().k))},
                   {"kappa", to_double(sim.bounds().kappa)},
                   {"eps", eps_d},
                   {"t", cfg.path.t_final},
                   {"rate", rate}};
  rep.runtime_seconds = timer.seconds();
  return rep;
}

InequalityReport check_poincare(const ModelSpace& model, const Rational& eps,
                                const TestFunction& f, const Rational& t, const MCConfig& mc,
                                const GroupPoint* x0) {
  Timer timer;
  Simulator sim(model, eps);
  MCConfig cfg = mc;
  cfg.path.t_final = to_double(t);
  const double eps_d = to_double(eps);
  const double two_eps = 2.0 * eps_d;
  const double c_rate = std::max(0.0, to_double(sim.bounds().k)) + to_double(sim.bounds().kappa) / two_eps;
  const double rate = rate_constant(c_rate, cfg.path.t_final);

  PathFunctional fn;
  fn.n_obs = 3;
  fn.needs_transport = false;
  fn.eval = [&](const PathResult& pr, double* out) {
    const double fv = f.eval(pr.endpoint);
    out[0] = fv;
    out[1] = fv * fv;
    out[2] = norm2_g(f.dframe(pr.endpoint), two_eps);
    return true;
  };
  const GroupPoint start = x0 ? *x0 : identity_point(model.group());
  const EnsembleResult r = run_ensemble(sim, cfg, fn, &start);

  InequalityReport rep;
  rep.name = "poincare[" + f.name + "]";
  const bool use_oracle = model.group() == GroupKind::heisenberg && f.exact.has_value();
  if (use_oracle) {
    const auto pt = point_array(start);
    const std::array<double, 3> heis_pt = {pt[0], pt[1], pt[2]};
    const double mean_f = heat_apply(t, *f.exact).eval(heis_pt);
    const double mean_f2 = heat_apply(t, (*f.exact) * (*f.exact)).eval(heis_pt);
    rep.lhs = mean_f2 - mean_f * mean_f;
    rep.lhs_se = 0.0;
  } else {
    rep.lhs = r.mean(1) - r.mean(0) * r.mean(0);
    rep.lhs_se = r.se_stat([](const std::vector<double>& m) { return m[1] - m[0] * m[0]; });
  }
  rep.rhs = rate * r.mean(2);
  rep.rhs_se = rate * r.se(2);
  rep.margin = rep.rhs - rep.lhs;
  rep.combined_se = std::hypot(rep.lhs_se, rep.rhs_se);
  rep.pass = rep.margin + 4.0 * rep.combined_se >= 0.0;
  rep.n_paths = r.n_included;
  rep.constants = {{"C", c_rate}, {"rate", rate}, {"eps", eps_d}, {"t", cfg.path.t_final}};
  rep.runtime_seconds = timer.seconds();
  return rep;
}

InequalityReport check_logsobolev(const ModelSpace& model, const Rational& eps,
                                  const TestFunction& f, const Rational& t, const MCConfig& mc,
                                  const GroupPoint* x0) {
  Timer timer;
  Simulator sim(model, eps);
  MCConfig cfg = mc;
  cfg.path.t_final = to_double(t);
  const double eps_d = to_double(eps);
  const double two_eps = 2.0 * eps_d;
  const double c_rate = std::max(0.0, to_double(sim.bounds().k)) + to_double(sim.bounds().kappa) / two_eps;
  const double rate = 2.0 * rate_constant(c_rate, cfg.path.t_final);

  PathFunctional fn;
  fn.n_obs = 3;
  fn.needs_transport = false;
  fn.eval = [&](const PathResult& pr, double* out) {
    const double fv = f.eval(pr.endpoint);
    const double f2 = fv * fv;
    if (f2 < 1e-30) return false;  // guarded: entropy integrand needs log f^2
    out[0] = f2;
    out[1] = f2 * std::log(f2);
    out[2] = norm2_g(f.dframe(pr.endpoint), two_eps);
    return true;
  };
  const GroupPoint start = x0 ? *x0 : identity_point(model.group());
  const EnsembleResult r = run_ensemble(sim, cfg, fn, &start);

  InequalityReport rep;
  rep.name = "logsobolev[" + f.name + "]";
  rep.n_paths = r.n_included;
  rep.rejected = r.rejected;
  const double m_f2 = r.mean(0);
  rep.lhs = r.mean(1) - m_f2 * std::log(m_f2);
  rep.lhs_se = r.se_stat([](const std::vector<double>& m) {
    return m[1] - m[0] * std::log(m[0]);
  });
  rep.rhs = rate * r.mean(2);
  rep.rhs_se = rate * r.se(2);
  rep.margin = rep.rhs - rep.lhs;
  rep.combined_se = std::hypot(rep.lhs_se, rep.rhs_se);
  rep.pass = rep.margin + 4.0 * rep.combined_se >= 0.0;
  const int64_t total = r.n_included + r.rejected;
  if (total > 0 && static_cast<double>(r.rejected) > 1e-3 * static_cast<double>(total)) {
    rep.pass = false;
    rep.diagnostic = "excessive guard rejections: " + std::to_string(r.rejected);
  }
  rep.constants = {{"C", c_rate}, {"rate", rate}, {"eps", eps_d}, {"t", cfg.path.t_final}};
  rep.runtime_seconds = timer.seconds();
  return rep;
}

InequalityReport check_ibp(const ModelSpace& model, const Rational& eps, const TestFunction& f,
                           const Rational& t, const PiecewiseControl& control, const MCConfig& mc,
                           const GroupPoint* x0) {
  Timer timer;
  Simulator sim(model, eps);
  MCConfig cfg = mc;
  cfg.path.t_final = to_double(t);

  PathFunctional fn;
  fn.n_obs = 3;
  fn.control = &control;
  fn.eval = [&](const PathResult& pr, double* out) {
    const double lhs = f.eval(pr.endpoint) * pr.control_ito;
    const double rhs = (pr.transport * f.dframe(pr.endpoint)).dot(pr.ibp_integral);
    out[0] = lhs;
    out[1] = rhs;
    out[2] = lhs - rhs;
    return true;
  };
  const GroupPoint start = x0 ? *x0 : identity_point(model.group());
  const EnsembleResult r = run_ensemble(sim, cfg, fn, &start);

  InequalityReport rep;
  rep.name = "ibp[" + f.name + "]";
  rep.equality = true;
  rep.lhs = r.mean(0);
  rep.lhs_se = r.se(0);
  rep.rhs = r.mean(1);
  rep.rhs_se = r.se(1);
  rep.margin = r.mean(2);
  rep.combined_se = r.se(2);  // paired difference on common paths
  rep.pass = std::abs(rep.margin) <= 4.0 * rep.combined_se;
  rep.n_paths = r.n_included;
  rep.constants = {{"eps", to_double(eps)}, {"t", cfg.path.t_final}};
  rep.runtime_seconds = timer.seconds();
  if (r.aborted > 0) rep.diagnostic = "aborted paths: " + std::to_string(r.aborted);
  return rep;
}

DecayReport check_decay(const ModelSpace& model, const Eigen::Vector3d& alpha,
                        const std::vector<double>& horizons, const MCConfig& mc) {
  const CurvatureBounds bounds = curvature_bounds(model);
  if (bounds.rho1 <= 0)
    throw std::invalid_argument("decay check requires a positive Ricci lower bound");

  DecayReport report;
  report.eps_opt = (bounds.kappa + bounds.rho2) / bounds.rho1;
  report.rate = to_double(bounds.rho1 * bounds.rho2 / (bounds.kappa + bounds.rho2));
  report.slope_limit = -report.rate + 0.05;

  Simulator sim(model, report.eps_opt);
  const double eps_d = to_double(report.eps_opt);
  const double alpha_norm2 = alpha[0] * alpha[0] + alpha[1] * alpha[1] + eps_d * alpha[2] * alpha[2];

  std::vector<double> log_lhs;
  bool all_pass = true;
  for (double t : horizons) {
    MCConfig cfg = mc;
    cfg.path.t_final = t;
    cfg.path.n_steps = std::max(1, static_cast<int>(std::lround(mc.path.n_steps * t)));
    PathFunctional fn;
    fn.n_obs = 1;
    fn.eval = [&](const PathResult& pr, double* out) {
      const Eigen::Vector3d v = pr.transport * alpha;
      out[0] = norm2_g(v, eps_d);
      return true;
    };
    const EnsembleResult r = run_ensemble(sim, cfg, fn);

    InequalityReport rep;
    rep.name = "decay[t=" + format_double(t) + "]";
    rep.lhs = r.mean(0);
    rep.lhs_se = r.se(0);
    rep.rhs = std::exp(-report.rate * t) * alpha_norm2;
    rep.rhs_se = 0.0;
    rep.margin = rep.rhs - rep.lhs;
    rep.combined_se = rep.lhs_se;
    rep.pass = rep.margin + 4.0 * rep.combined_se >= 0.0;
    rep.n_paths = r.n_included;
    rep.constants = {{"eps_opt", eps_d}, {"rate", report.rate}, {"t", t}};
    all_pass = all_pass && rep.pass;
    log_lhs.push_back(std::log(rep.lhs));
    report.per_t.push_back(std::move(rep));
  }

  // Least-squares slope of log E||M_t alpha||^2 against t. A zero initial
  // covector makes both sides vanish; the slope criterion is then vacuous.
  const size_t n = horizons.size();
  if (alpha_norm2 == 0.0) {
    report.slope = 0.0;
    report.slope_pass = true;
  } else if (n >= 2) {
    double t_mean = 0, y_mean = 0;
    for (size_t i = 0; i < n; ++i) {
      t_mean += horizons[i];
      y_mean += log_lhs[i];
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);
    double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
      num += (horizons[i] - t_mean) * (log_lhs[i] - y_mean);
      den += (horizons[i] - t_mean) * (horizons[i] - t_mean);
    }
    report.slope = num / den;
    report.slope_pass = report.slope <= report.slope_limit;
  }
  report.pass = all_pass && report.slope_pass;
  return report;
}

JsonValue estimate_json(const EstimateReport& report) {
  JsonValue v = JsonValue::object();
  JsonValue value = JsonValue::array();
  for (double x : report.value) value.push_back(JsonValue::number(x));
  JsonValue se = JsonValue::array();
  for (double x : report.std_error) se.push_back(JsonValue::number(x));
  v.set("value", std::move(value));
  v.set("std_error", std::move(se));
  v.set("n_paths", JsonValue::integer(report.n_paths));
  return v;
}

JsonValue inequality_json(const InequalityReport& report) {
  JsonValue v = JsonValue::object();
  v.set("name", JsonValue::string(report.name));
  v.set("kind", JsonValue::string(report.equality ? "equality" : "inequality"));
  v.set("lhs", JsonValue::number(report.lhs));
  v.set("lhs_se", JsonValue::number(report.lhs_se));
  v.set("rhs", JsonValue::number(report.rhs));
  v.set("rhs_se", JsonValue::number(report.rhs_se));
  v.set("margin", JsonValue::number(report.margin));
  v.set("combined_se", JsonValue::number(report.combined_se));
  v.set("pass", JsonValue::boolean(report.pass));
  v.set("n_paths", JsonValue::integer(report.n_paths));
  if (report.rejected > 0) v.set("rejected", JsonValue::integer(report.rejected));
  JsonValue consts = JsonValue::object();
  for (const auto& [k, val] : report.constants) consts.set(k, JsonValue::number(val));
  v.set("constants", std::move(consts));
  if (!report.diagnostic.empty()) v.set("diagnostic", JsonValue::string(report.diagnostic));
  return v;
}

JsonValue decay_json(const DecayReport& report) {
  JsonValue v = JsonValue::object();
  v.set("eps_opt", JsonValue::rational(report.eps_opt));
  v.set("rate", JsonValue::number(report.rate));
  JsonValue arr = JsonValue::array();
  for (const auto& r : report.per_t) arr.push_back(inequality_json(r));
  v.set("per_t", std::move(arr));
  v.set("slope", JsonValue::number(report.slope));
  v.set("slope_limit", JsonValue::number(report.slope_limit));
  v.set("slope_pass", JsonValue::boolean(report.slope_pass));
  v.set("pass", JsonValue::boolean(report.pass));
  return v;
}

}  // namespace hypoheat
