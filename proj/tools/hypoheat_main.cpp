#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hypoheat/estimators.hpp"
#include "hypoheat/functions.hpp"
#include "hypoheat/heis.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/pbw.hpp"
#include "hypoheat/report.hpp"
#include "hypoheat/rng.hpp"
#include "hypoheat/sde.hpp"
#include "hypoheat/selftest.hpp"

namespace {

using namespace hypoheat;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string model = "heisenberg";
  std::string eps = "1";
  std::string t = "1";
  std::string f = "x";
  int64_t paths = 100000;
  int steps = 500;
  uint64_t seed = 20250810;
  std::string scheme = "exp_splitting";
  int batches = 16;
  int threads = 0;
  std::string x0;
  std::string out;
  bool json = false;
};

void add_model_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--model", o.model, "heisenberg|su2|sl2|grho:<rho>");
  cmd->add_option("--eps", o.eps, "metric parameter eps as p/q or decimal");
}

void add_mc_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--t", o.t, "time horizon as p/q or decimal");
  cmd->add_option("--f", o.f, "named test function");
  cmd->add_option("--paths", o.paths, "Monte Carlo path count");
  cmd->add_option("--steps", o.steps, "time steps");
  cmd->add_option("--seed", o.seed, "master seed (HYPOHEAT_SEED overrides)");
  cmd->add_option("--scheme", o.scheme, "stratonovich_heun|ito_euler|exp_splitting");
  cmd->add_option("--batches", o.batches, "batch count for batch-means errors");
  cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
  cmd->add_option("--x0", o.x0, "start point x,y,z (heisenberg only)");
}

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "write the JSON report to this path");
  cmd->add_flag("--json", o.json, "print JSON instead of the human summary");
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ModelSpace require_model(const std::string& spec) {
  auto m = parse_model(spec);
  if (!m) throw UsageError("unknown model: " + spec);
  return *m;
}

Rational require_rational(const std::string& text, const std::string& what) {
  auto r = parse_rational(text);
  if (!r) throw UsageError("cannot parse " + what + ": " + text);
  return *r;
}

Rational require_positive(const std::string& text, const std::string& what) {
  Rational r = require_rational(text, what);
  if (r <= 0) throw UsageError(what + " must be positive");
  return r;
}

MCConfig make_mc(const CommonOpts& o) {
  MCConfig mc;
  mc.n_paths = o.paths;
  mc.seed = o.seed;
  mc.batches = o.batches;
  mc.threads = o.threads;
  mc.path.n_steps = o.steps;
  auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw UsageError("unknown scheme: " + o.scheme);
  mc.path.scheme = *scheme;
  return mc;
}

std::optional<GroupPoint> parse_x0(const CommonOpts& o, const ModelSpace& model) {
  if (o.x0.empty()) return std::nullopt;
  if (model.group() != GroupKind::heisenberg)
    throw UsageError("--x0 is only supported on the heisenberg model");
  GroupPoint p = identity_point(GroupKind::heisenberg);
  std::istringstream in(o.x0);
  std::string tok;
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(in, tok, ',')) throw UsageError("--x0 expects x,y,z");
    p.coords[i] = std::stod(tok);
  }
  return p;
}

JsonValue config_json(const CommonOpts& o, bool with_mc) {
  JsonValue v = JsonValue::object();
  v.set("model", JsonValue::string(o.model));
  v.set("eps", JsonValue::string(o.eps));
  if (with_mc) {
    v.set("t", JsonValue::string(o.t));
    v.set("f", JsonValue::string(o.f));
    v.set("paths", JsonValue::integer(o.paths));
    v.set("steps", JsonValue::integer(o.steps));
    v.set("seed", JsonValue::integer(static_cast<int64_t>(o.seed)));
    v.set("scheme", JsonValue::string(o.scheme));
    v.set("batches", JsonValue::integer(o.batches));
    if (!o.x0.empty()) v.set("x0", JsonValue::string(o.x0));
  }
  return v;
}

int emit(const CommonOpts& o, const std::string& human, const JsonValue& root, bool pass) {
  const std::string json_text = root.dump(2) + "\n";
  if (o.json) {
    std::cout << json_text;
  } else {
    std::cout << human;
  }
  if (!o.out.empty()) {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file: " + o.out);
    file << json_text;
  }
  return pass ? kExitPass : kExitFail;
}

std::string inequality_human(const InequalityReport& r) {
  std::ostringstream out;
  out << r.name << (r.equality ? " (equality)" : "") << "\n"
      << "  lhs    = " << r.lhs << " +- " << r.lhs_se << "\n"
      << "  rhs    = " << r.rhs << " +- " << r.rhs_se << "\n"
      << "  margin = " << r.margin << "  (4 se = " << 4.0 * r.combined_se << ")\n";
  if (!r.diagnostic.empty()) out << "  note   : " << r.diagnostic << "\n";
  out << (r.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

int run_verify_commutation(const CommonOpts& o) {
  const ModelSpace model = require_model(o.model);
  const Rational eps = require_positive(o.eps, "eps");
  PbwAlgebra algebra(model.rho);
  const auto residuals = algebra.commutation_residuals(eps);

  bool pass = true;
  std::ostringstream human;
  JsonValue list = JsonValue::array();
  for (int i = 0; i < 3; ++i) {
    const bool zero = residuals[static_cast<size_t>(i)].is_zero();
    pass = pass && zero;
    static const char* rows[3] = {"X", "Y", "Z"};
    human << "residual[" << rows[i] << "] = " << residuals[static_cast<size_t>(i)].to_string()
          << "\n";
    JsonValue item = JsonValue::object();
    item.set("row", JsonValue::string(rows[i]));
    item.set("terms", JsonValue::integer(static_cast<int64_t>(residuals[static_cast<size_t>(i)].term_count())));
    item.set("residual", JsonValue::string(residuals[static_cast<size_t>(i)].to_string()));
    list.push_back(std::move(item));
  }
  human << "commutation dL = box d: " << (pass ? "PASS" : "FAIL") << "\n";

  JsonValue root = JsonValue::object();
  root.set("command", JsonValue::string("verify commutation"));
  root.set("config", config_json(o, false));
  root.set("residuals", std::move(list));
  root.set("pass", JsonValue::boolean(pass));
  return emit(o, human.str(), root, pass);
}

int run_verify_bw(const CommonOpts& o, int trials, int max_degree) {
  const Rational eps = require_positive(o.eps, "eps");
  SmallRng rng(o.seed);
  int nonzero = 0;
  std::ostringstream human;
  for (int i = 0; i < trials; ++i) {
    const OneFormPoly eta = random_one_form(rng, max_degree);
    const HeisPoly residual = bw_residual(eps, eta);
    if (!residual.is_zero()) {
      ++nonzero;
      human << "trial " << i << " residual = "
            << residual.to_string({"x", "y", "z"}) << "\n";
    }
  }
  const bool pass = nonzero == 0;
  human << "bochner-weitzenboeck residual: " << trials << " random one-forms, " << nonzero
        << " nonzero -> " << (pass ? "PASS" : "FAIL") << "\n";

  JsonValue root = JsonValue::object();
  root.set("command", JsonValue::string("verify bw"));
  JsonValue cfg = config_json(o, false);
  cfg.set("trials", JsonValue::integer(trials));
  cfg.set("max_degree", JsonValue::integer(max_degree));
  cfg.set("seed", JsonValue::integer(static_cast<int64_t>(o.seed)));
  root.set("config", std::move(cfg));
  root.set("nonzero_residuals", JsonValue::integer(nonzero));
  root.set("pass", JsonValue::boolean(pass));
  return emit(o, human.str(), root, pass);
}

int run_normal_form(const CommonOpts& o, const std::string& word_text) {
  const ModelSpace model = require_model(o.model);
  Word word;
  if (!parse_word(word_text, word)) throw UsageError("word must use letters X, Y, Z");
  PbwAlgebra algebra(model.rho);
  const PBWPoly nf = algebra.normal_form(word);
  std::ostringstream human;
  human << word_text << " = " << nf.to_string() << "\n";
  JsonValue root = JsonValue::object();
  root.set("command", JsonValue::string("normal-form"));
  root.set("config", config_json(o, false));
  root.set("word", JsonValue::string(word_text));
  root.set("normal_form", JsonValue::string(nf.to_string()));
  return emit(o, human.str(), root, true);
}

JsonValue qmat_json(const QMat3& m, bool as_float) {
  JsonValue rows = JsonValue::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (as_float) {
        rows.push_back(JsonValue::number(to_double(m(i, j))));
      } else {
        rows.push_back(JsonValue::rational(m(i, j)));
      }
    }
  return rows;
}

int run_dump_tensors(const CommonOpts& o, bool as_float) {
  const ModelSpace model = require_model(o.model);
  const Rational eps = require_positive(o.eps, "eps");
  const TensorSet tensors = tensor_set(model, eps);
  const CurvatureBounds bounds = curvature_bounds(model);

  std::ostringstream human;
  auto print = [&](const char* name, const QMat3& m) {
    human << name << ":\n";
    for (int i = 0; i < 3; ++i) {
      human << "  [";
      for (int j = 0; j < 3; ++j)
        human << (j ? ", " : " ") << to_fraction_string(m(i, j));
      human << " ]\n";
    }
  };
  print("Ric_H", tensors.ric);
  print("J*J", tensors.jj);
  print("T_X", tensors.t_x);
  print("T_Y", tensors.t_y);
  print("C = J*J/(2 eps) - Ric_H", tensors.c);
  human << "bounds: K=" << to_fraction_string(bounds.k) << " kappa=" << to_fraction_string(bounds.kappa)
        << " rho1=" << to_fraction_string(bounds.rho1) << " rho2=" << to_fraction_string(bounds.rho2)
        << "\n";

  JsonValue root = JsonValue::object();
  root.set("command", JsonValue::string("dump tensors"));
  root.set("config", config_json(o, false));
  JsonValue mats = JsonValue::object();
  mats.set("ric", qmat_json(tensors.ric, as_float));
  mats.set("jj", qmat_json(tensors.jj, as_float));
  mats.set("t_x", qmat_json(tensors.t_x, as_float));
  mats.set("t_y", qmat_json(tensors.t_y, as_float));
  mats.set("c", qmat_json(tensors.c, as_float));
  root.set("tensors_row_major", std::move(mats));
  JsonValue bv = JsonValue::object();
  bv.set("K", JsonValue::rational(bounds.k));
  bv.set("kappa", JsonValue::rational(bounds.kappa));
  bv.set("rho1", JsonValue::rational(bounds.rho1));
  bv.set("rho2", JsonValue::rational(bounds.rho2));
  root.set("bounds", std::move(bv));
  root.set("jacobi_zero", JsonValue::boolean(jacobi_residual(model) == 0));
  root.set("yang_mills", JsonValue::boolean(yang_mills_check(model)));
  return emit(o, human.str(), root, true);
}

int run_estimate(const CommonOpts& o, bool derivative) {
  const ModelSpace model = require_model(o.model);
  const Rational eps = require_positive(o.eps, "eps");
  const Rational t = require_positive(o.t, "t");
  const TestFunction f = make_function(model, o.f);
  const MCConfig mc = make_mc(o);
  const auto x0 = parse_x0(o, model);
  const GroupPoint* start = x0 ? &*x0 : nullptr;

  const EstimateReport rep = derivative ? estimate_dptf(model, eps, f, t, mc, start)
                                        : estimate_ptf(model, eps, f, t, mc, start);

  std::ostringstream human;
  human << (derivative ? "dP_t f" : "P_t f") << " [" << o.f << ", model " << o.model << "]:\n";
  for (size_t i = 0; i < rep.value.size(); ++i)
    human << "  " << rep.value[i] << " +- " << rep.std_error[i] << "\n";
  human << "  n_paths = " << rep.n_paths << ", runtime = " << rep.runtime_seconds << " s\n";

  JsonValue root = JsonValue::object();
  root.set("command", JsonValue::string(derivative ? "estimate dptf" : "estimate ptf"));
  root.set("config", config_json(o, true));
  root.set("result", estimate_json(rep));
  return emit(o, human.str(), root, true);
}

int run_check(const CommonOpts& o, const std::string& which, const std::string& gamma_text,
              std::vector<double> horizons, const std::string& alpha_text) {
  const ModelSpace model = require_model(o.model);
  const Rational eps = require_positive(o.eps, "eps");
  const Rational t = require_positive(o.t, "t");
  const MCConfig mc = make_mc(o);
  const auto x0 = parse_x0(o, model);
  const GroupPoint* start = x0 ? &*x0 : nullptr;

  JsonValue root = JsonValue::object();
  root.set("command", JsonValue::string("check " + which));
  root.set("config", config_json(o, true));

  if (which == "decay") {
    Eigen::Vector3d alpha(1, 0, 0);
    if (!alpha_text.empty()) {
      std::istringstream in(alpha_text);
      std::string tok;
      for (int i = 0; i < 3; ++i) {
        if (!std::getline(in, tok, ',')) throw UsageError("--alpha expects a1,a2,a3");
        alpha[i] = std::stod(tok);
      }
    }
    if (horizons.empty()) horizons = {1.0, 2.0, 4.0};
    const DecayReport rep = check_decay(model, alpha, horizons, mc);
    std::ostringstream human;
    human << "decay at eps_opt = " << to_fraction_string(rep.eps_opt) << ", rate = " << rep.rate
          << "\n";
    for (const auto& r : rep.per_t) human << inequality_human(r);
    human << "log-slope = " << rep.slope << " (limit " << rep.slope_limit << ") -> "
          << (rep.slope_pass ? "PASS" : "FAIL") << "\n";
    root.set("result", decay_json(rep));
    return emit(o, human.str(), root, rep.pass);
  }

  InequalityReport rep;
  if (which == "gradient") {
    rep = check_gradient_bound(model, eps, make_function(model, o.f), t, mc, start);
  } else if (which == "poincare") {
    rep = check_poincare(model, eps, make_function(model, o.f), t, mc, start);
  } else if (which == "logsobolev") {
    rep = check_logsobolev(model, eps, make_function(model, o.f), t, mc, start);
  } else if (which == "ibp") {
    Eigen::Vector2d gamma(1.0, 0.0);
    if (!gamma_text.empty()) {
      std::istringstream in(gamma_text);
      std::string tok;
      for (int i = 0; i < 2; ++i) {
        if (!std::getline(in, tok, ',')) throw UsageError("--gamma expects g1,g2");
        gamma[i] = std::stod(tok);
      }
    }
    rep = check_ibp(model, eps, make_function(model, o.f), t, PiecewiseControl::constant(gamma),
                    mc, start);
  } else {
    throw UsageError("unknown check: " + which);
  }
  root.set("result", inequality_json(rep));
  return emit(o, inequality_human(rep), root, rep.pass);
}

int run_trace(const CommonOpts& o, int64_t path_index) {
  const ModelSpace model = require_model(o.model);
  const Rational eps = require_positive(o.eps, "eps");
  Simulator sim(model, eps);
  PathConfig config;
  config.t_final = to_double(require_positive(o.t, "t"));
  config.n_steps = o.steps;
  auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw UsageError("unknown scheme: " + o.scheme);
  config.scheme = *scheme;
  config.seed = o.seed;
  config.path_index = path_index;

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file: " + o.out);
    out = &file;
  }
  const PathResult pr = sim.run(config, nullptr, nullptr, false, out);
  return pr.ok ? kExitPass : kExitFail;
}

int run_selftest(const CommonOpts& o, double path_scale, bool csv) {
  SelftestOptions opts;
  opts.seed = o.seed;
  opts.threads = o.threads;
  opts.path_scale = path_scale;
  const SuiteReport report = selftest(opts);
  if (o.json) {
    std::cout << report.to_json();
  } else if (csv) {
    std::cout << report.to_csv();
  } else {
    std::cout << report.human_table();
  }
  if (!o.out.empty()) {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file: " + o.out);
    file << report.to_json();
  }
  return report.overall_pass() ? kExitPass : kExitFail;
}

// Flat key=value or JSON config files are translated into CLI arguments that
// are inserted before the user's explicit flags (explicit flags win).
std::vector<std::string> load_config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  std::vector<std::string> args;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw UsageError("JSON config must be a flat object");
    for (const auto& [key, value] : doc.items()) {
      std::string rendered;
      if (value.is_string()) {
        rendered = value.get<std::string>();
      } else if (value.is_boolean()) {
        rendered = value.get<bool>() ? "true" : "false";
      } else {
        rendered = value.dump();
      }
      args.push_back("--" + key + "=" + rendered);
    }
    return args;
  }

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config lines must be key=value");
    args.push_back("--" + line.substr(0, eq) + "=" + line.substr(eq + 1));
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for heat-semigroup identities on the model spaces G(rho)"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CommonOpts o;
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value or JSON config file")
      ->expected(1);

  // verify
  auto* verify = app.add_subcommand("verify", "exact symbolic verifications");
  verify->require_subcommand(1);
  auto* commutation = verify->add_subcommand("commutation", "residuals of dL = box d");
  add_model_opts(commutation, o);
  add_output_opts(commutation, o);
  auto* bw = verify->add_subcommand("bw", "Bochner-Weitzenboeck residuals on random one-forms");
  int bw_trials = 100;
  int bw_degree = 3;
  bw->add_option("--trials", bw_trials, "number of random one-forms");
  bw->add_option("--max-degree", bw_degree, "max coefficient degree");
  bw->add_option("--seed", o.seed, "seed for the random one-forms");
  bw->add_option("--eps", o.eps, "metric parameter eps");
  add_output_opts(bw, o);

  auto* nf = app.add_subcommand("normal-form", "PBW normal form of a generator word");
  std::string word_text;
  nf->add_option("word", word_text, "word over X, Y, Z, e.g. ZYX")->required();
  add_model_opts(nf, o);
  add_output_opts(nf, o);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo semigroup estimators");
  estimate->require_subcommand(1);
  auto* ptf = estimate->add_subcommand("ptf", "P_t f at the start point");
  add_model_opts(ptf, o);
  add_mc_opts(ptf, o);
  add_output_opts(ptf, o);
  auto* dptf = estimate->add_subcommand("dptf", "dP_t f via the transport representation");
  add_model_opts(dptf, o);
  add_mc_opts(dptf, o);
  add_output_opts(dptf, o);

  // check
  auto* check = app.add_subcommand("check", "functional inequality checkers");
  check->require_subcommand(1);
  std::string gamma_text, alpha_text;
  std::vector<double> horizons;
  for (const char* which : {"gradient", "poincare", "logsobolev", "ibp", "decay"}) {
    auto* sub = check->add_subcommand(which);
    add_model_opts(sub, o);
    add_mc_opts(sub, o);
    add_output_opts(sub, o);
    if (std::string(which) == "ibp")
      sub->add_option("--gamma", gamma_text, "constant control g1,g2");
    if (std::string(which) == "decay") {
      sub->add_option("--ts", horizons, "time horizons")->delimiter(',');
      sub->add_option("--alpha", alpha_text, "initial covector a1,a2,a3");
    }
  }

  // dump
  auto* dump = app.add_subcommand("dump", "tensor dumps");
  auto* tensors_cmd = dump->add_subcommand("tensors", "structure tensors for a model");
  bool as_float = false;
  add_model_opts(tensors_cmd, o);
  tensors_cmd->add_flag("--float", as_float, "numbers instead of exact p/q strings");
  add_output_opts(tensors_cmd, o);

  auto* trace = app.add_subcommand("trace", "CSV dump of one simulated path");
  int64_t trace_path = 0;
  add_model_opts(trace, o);
  add_mc_opts(trace, o);
  trace->add_option("--path-index", trace_path, "which path to trace");
  trace->add_option("--out", o.out, "CSV output path (default stdout)");

  auto* self = app.add_subcommand("selftest", "run the pinned acceptance suite");
  double path_scale = 1.0;
  bool csv = false;
  self->add_option("--seed", o.seed, "master seed");
  self->add_option("--threads", o.threads, "worker threads (0 = auto)");
  self->add_option("--paths-scale", path_scale, "scale factor for pinned path counts");
  self->add_flag("--csv", csv, "print the CSV summary");
  add_output_opts(self, o);

  // Insert config-file arguments ahead of explicit flags so the latter win.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    for (size_t i = 0; i < args.size(); ++i) {
      std::string value;
      if (args[i] == "--config" && i + 1 < args.size()) {
        value = args[i + 1];
        args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      } else if (args[i].rfind("--config=", 0) == 0) {
        value = args[i].substr(9);
        args.erase(args.begin() + static_cast<long>(i));
      } else {
        continue;
      }
      const auto extra = load_config_args(value);
      size_t insert_at = 0;
      while (insert_at < args.size() && !args[insert_at].empty() && args[insert_at][0] != '-')
        ++insert_at;  // keep subcommand names in front
      args.insert(args.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
      break;
    }

    std::vector<const char*> argv2;
    argv2.push_back(argv[0]);
    for (const auto& a : args) argv2.push_back(a.c_str());
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (const char* env_seed = std::getenv("HYPOHEAT_SEED")) {
    try {
      o.seed = std::stoull(env_seed);
    } catch (...) {
      std::cerr << "error: HYPOHEAT_SEED must be an integer\n";
      return kExitUsage;
    }
  }

  try {
    if (commutation->parsed()) return run_verify_commutation(o);
    if (bw->parsed()) return run_verify_bw(o, bw_trials, bw_degree);
    if (nf->parsed()) return run_normal_form(o, word_text);
    if (ptf->parsed()) return run_estimate(o, false);
    if (dptf->parsed()) return run_estimate(o, true);
    if (check->parsed()) {
      for (const auto* sub : check->get_subcommands())
        return run_check(o, sub->get_name(), gamma_text, horizons, alpha_text);
    }
    if (tensors_cmd->parsed()) return run_dump_tensors(o, as_float);
    if (trace->parsed()) return run_trace(o, trace_path);
    if (self->parsed()) return run_selftest(o, path_scale, csv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitFail;
  }
  std::cerr << "error: no subcommand\n";
  return kExitUsage;
}
