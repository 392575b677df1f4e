#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

#include "hypoheat/functions.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/report.hpp"
#include "hypoheat/sde.hpp"

namespace hypoheat {

struct MCConfig {
  int64_t n_paths = 100000;
  uint64_t seed = 0;
  int batches = 16;  // fixed partition for batch-means standard errors
  PathConfig path;   // t_final is set per call; seed/path_index are ignored
  int threads = 0;   // <= 0 picks a hardware default
};

/// Raw ensemble pass: per-path observables accumulated per batch with
/// compensated sums. The batch partition depends only on (n_paths, batches),
/// and batches are reduced in index order, so results are bit-identical for
/// any thread count.
struct EnsembleResult {
  int64_t n_included = 0;
  int64_t rejected = 0;
  int64_t aborted = 0;
  double max_bound_ratio = 0.0;
  std::vector<double> means;
  std::vector<std::vector<double>> batch_means;  // [batch][observable]

  double mean(int j) const { return means[static_cast<size_t>(j)]; }
  double se(int j) const;
  /// Batch-means standard error of a statistic of the observable means.
  double se_stat(const std::function<double(const std::vector<double>&)>& stat) const;
};

struct PathFunctional {
  int n_obs = 1;
  bool needs_transport = true;
  bool track_bound = false;
  const PiecewiseControl* control = nullptr;
  /// Fills out[0..n_obs); returning false rejects the path (counted).
  std::function<bool(const PathResult&, double* out)> eval;
};

EnsembleResult run_ensemble(const Simulator& sim, const MCConfig& mc, const PathFunctional& fn,
                            const GroupPoint* start = nullptr);

/// Same deterministic batching machinery for observables that are a direct
/// function of the path index (used by refinement-coupled studies).
EnsembleResult run_ensemble_raw(const MCConfig& mc, int n_obs,
                                const std::function<bool(int64_t, double*)>& per_path);

struct EstimateReport {
  std::vector<double> value;
  std::vector<double> std_error;
  int64_t n_paths = 0;
  double runtime_seconds = 0.0;
};

/// Monte Carlo P_t f(x0) = E[f(X_t)]; batch-means standard error.
EstimateReport estimate_ptf(const ModelSpace& model, const Rational& eps, const TestFunction& f,
                            const Rational& t, const MCConfig& mc,
                            const GroupPoint* x0 = nullptr);

/// Bismut-type representation dP_t f(x0) = E[tau_t df(X_t)] in frame
/// coefficients; the result is eps-independent up to Monte Carlo error.
EstimateReport estimate_dptf(const ModelSpace& model, const Rational& eps, const TestFunction& f,
                             const Rational& t, const MCConfig& mc,
                             const GroupPoint* x0 = nullptr);

struct InequalityReport {
  std::string name;
  bool equality = false;  // equality tests pass when |lhs - rhs| <= 4 se
  double lhs = 0, lhs_se = 0;
  double rhs = 0, rhs_se = 0;
  double margin = 0;       // rhs - lhs (equality: rhs - lhs as signed gap)
  double combined_se = 0;  // sqrt(lhs_se^2 + rhs_se^2) or paired-difference se
  bool pass = false;
  int64_t n_paths = 0;
  int64_t rejected = 0;
  double runtime_seconds = 0.0;
  std::vector<std::pair<std::string, double>> constants;
  std::string diagnostic;
};

/// sqrt(||grad_H P_t f||^2 + 2 eps ||grad_V P_t f||^2)
///   <= e^{(K + kappa/(2 eps)) t / 2} P_t sqrt(||grad_H f||^2 + 2 eps ||grad_V f||^2).
/// The left side uses the exact heat oracle on the Heisenberg group and the
/// transport estimator elsewhere (common random numbers with the right side).
InequalityReport check_gradient_bound(const ModelSpace& model, const Rational& eps,
                                      const TestFunction& f, const Rational& t, const MCConfig& mc,
                                      const GroupPoint* x0 = nullptr);

/// Var <= (e^{Ct} - 1)/C [P_t ||grad_H f||^2 + 2 eps P_t ||grad_V f||^2],
/// C = K + kappa/(2 eps); the rate constant degenerates to t as C -> 0.
InequalityReport check_poincare(const ModelSpace& model, const Rational& eps,
                                const TestFunction& f, const Rational& t, const MCConfig& mc,
                                const GroupPoint* x0 = nullptr);

/// Entropy form with twice the Poincare rate constant. Paths where
/// f^2 < 1e-30 are rejected with a counted diagnostic; more than 0.1%
/// rejections fails the run.
InequalityReport check_logsobolev(const ModelSpace& model, const Rational& eps,
                                  const TestFunction& f, const Rational& t, const MCConfig& mc,
                                  const GroupPoint* x0 = nullptr);

/// Integration by parts: E[f(X_t) int <gamma', dB>] equals
/// E[<tau_t df(X_t), int (tau_s^*)^{-1} gamma'(s) ds>], evaluated on common
/// paths with a paired-difference standard error. On frame coefficients the
/// metric factors cancel against the adjoint, leaving the plain dot product
/// with the accumulated (M_s^T)^{-1} gamma' integral.
InequalityReport check_ibp(const ModelSpace& model, const Rational& eps, const TestFunction& f,
                           const Rational& t, const PiecewiseControl& control, const MCConfig& mc,
                           const GroupPoint* x0 = nullptr);

struct DecayReport {
  Rational eps_opt;   // (kappa + rho2) / rho1
  double rate = 0.0;  // rho1 rho2 / (kappa + rho2)
  std::vector<InequalityReport> per_t;
  double slope = 0.0;        // least-squares slope of log E||M_t alpha||_eps^2
  double slope_limit = 0.0;  // -rate + 0.05
  bool slope_pass = false;
  bool pass = false;
};

/// Exponential decay of E ||tau_t alpha||_eps^2 at the optimal eps for models
/// with rho1 > 0 (throws std::invalid_argument otherwise). The norm uses
/// G_eps = diag(1, 1, eps). mc.path.n_steps is interpreted per unit time so
/// the step size is constant across horizons.
DecayReport check_decay(const ModelSpace& model, const Eigen::Vector3d& alpha,
                        const std::vector<double>& horizons, const MCConfig& mc);

/// Deterministic JSON payloads (wall-clock runtimes excluded by design).
JsonValue estimate_json(const EstimateReport& report);
JsonValue inequality_json(const InequalityReport& report);
JsonValue decay_json(const DecayReport& report);

}  // namespace hypoheat
