#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "hypoheat/estimators.hpp"
#include "hypoheat/functions.hpp"
#include "hypoheat/heis.hpp"
#include "hypoheat/model.hpp"
#include "hypoheat/pbw.hpp"
#include "hypoheat/rng.hpp"
#include "hypoheat/sde.hpp"
#include "hypoheat/selftest.hpp"

namespace py = pybind11;
using namespace hypoheat;

namespace {

ModelSpace model_from(const std::string& spec) {
  auto m = parse_model(spec);
  if (!m) throw std::invalid_argument("unknown model: " + spec);
  return *m;
}

Rational rational_from(const std::string& text, const char* what) {
  auto r = parse_rational(text);
  if (!r) throw std::invalid_argument(std::string("cannot parse ") + what + ": " + text);
  return *r;
}

MCConfig mc_from(int64_t paths, int steps, uint64_t seed, const std::string& scheme, int batches,
                 int threads) {
  MCConfig mc;
  mc.n_paths = paths;
  mc.seed = seed;
  mc.batches = batches;
  mc.threads = threads;
  mc.path.n_steps = steps;
  auto s = parse_scheme(scheme);
  if (!s) throw std::invalid_argument("unknown scheme: " + scheme);
  mc.path.scheme = *s;
  return mc;
}

py::list qmat_rows(const QMat3& m, bool exact) {
  py::list rows;
  for (int i = 0; i < 3; ++i) {
    py::list row;
    for (int j = 0; j < 3; ++j) {
      if (exact) {
        row.append(to_fraction_string(m(i, j)));
      } else {
        row.append(to_double(m(i, j)));
      }
    }
    rows.append(row);
  }
  return rows;
}

py::dict estimate_dict(const EstimateReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["std_error"] = r.std_error;
  d["n_paths"] = r.n_paths;
  return d;
}

py::dict inequality_dict(const InequalityReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["equality"] = r.equality;
  d["lhs"] = r.lhs;
  d["lhs_se"] = r.lhs_se;
  d["rhs"] = r.rhs;
  d["rhs_se"] = r.rhs_se;
  d["margin"] = r.margin;
  d["combined_se"] = r.combined_se;
  d["pass"] = r.pass;
  d["n_paths"] = r.n_paths;
  d["rejected"] = r.rejected;
  if (!r.diagnostic.empty()) d["diagnostic"] = r.diagnostic;
  py::dict consts;
  for (const auto& [k, v] : r.constants) consts[py::str(k)] = v;
  d["constants"] = consts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hypoheat, m) {
  m.doc() = "heat-semigroup verification engine on the model spaces G(rho)";

  m.def(
      "model_info",
      [](const std::string& model) {
        const ModelSpace ms = model_from(model);
        const CurvatureBounds b = curvature_bounds(ms);
        py::dict d;
        d["name"] = model_name(ms);
        d["rho"] = to_fraction_string(ms.rho);
        d["K"] = to_fraction_string(b.k);
        d["kappa"] = to_fraction_string(b.kappa);
        d["rho1"] = to_fraction_string(b.rho1);
        d["rho2"] = to_fraction_string(b.rho2);
        d["jacobi_zero"] = jacobi_residual(ms) == 0;
        d["yang_mills"] = yang_mills_check(ms);
        return d;
      },
      py::arg("model"));

  m.def(
      "tensors",
      [](const std::string& model, const std::string& eps, bool exact) {
        const TensorSet t = tensor_set(model_from(model), rational_from(eps, "eps"));
        py::dict d;
        d["ric"] = qmat_rows(t.ric, exact);
        d["jj"] = qmat_rows(t.jj, exact);
        d["t_x"] = qmat_rows(t.t_x, exact);
        d["t_y"] = qmat_rows(t.t_y, exact);
        d["c"] = qmat_rows(t.c, exact);
        return d;
      },
      py::arg("model"), py::arg("eps") = "1", py::arg("exact") = false);

  m.def(
      "verify_commutation",
      [](const std::string& model, const std::string& eps) {
        PbwAlgebra algebra(model_from(model).rho);
        const auto residuals = algebra.commutation_residuals(rational_from(eps, "eps"));
        py::list out;
        bool pass = true;
        for (const auto& r : residuals) {
          out.append(r.to_string());
          pass = pass && r.is_zero();
        }
        py::dict d;
        d["residuals"] = out;
        d["pass"] = pass;
        return d;
      },
      py::arg("model"), py::arg("eps") = "1");

  m.def(
      "normal_form",
      [](const std::string& word_text, const std::string& model) {
        Word word;
        if (!parse_word(word_text, word))
          throw std::invalid_argument("word must use letters X, Y, Z");
        PbwAlgebra algebra(model_from(model).rho);
        return algebra.normal_form(word).to_string();
      },
      py::arg("word"), py::arg("model") = "heisenberg");

  m.def(
      "heat_apply",
      [](const std::string& f, const std::string& t) {
        const TestFunction fn = make_function(build_model(Rational(0)), f);
        return heat_apply(rational_from(t, "t"), *fn.exact).to_string({"x", "y", "z"});
      },
      py::arg("f"), py::arg("t") = "1");

  m.def(
      "heat_value",
      [](const std::string& f, const std::string& t, const std::array<double, 3>& point) {
        const TestFunction fn = make_function(build_model(Rational(0)), f);
        return heat_apply(rational_from(t, "t"), *fn.exact).eval(point);
      },
      py::arg("f"), py::arg("t") = "1",
      py::arg("point") = std::array<double, 3>{0.0, 0.0, 0.0});

  m.def(
      "verify_bw",
      [](const std::string& eps, int trials, int max_degree, uint64_t seed) {
        SmallRng rng(seed);
        const Rational e = rational_from(eps, "eps");
        int nonzero = 0;
        for (int i = 0; i < trials; ++i)
          if (!bw_residual(e, random_one_form(rng, max_degree)).is_zero()) ++nonzero;
        py::dict d;
        d["trials"] = trials;
        d["nonzero_residuals"] = nonzero;
        d["pass"] = nonzero == 0;
        return d;
      },
      py::arg("eps") = "1", py::arg("trials") = 100, py::arg("max_degree") = 3,
      py::arg("seed") = 20250810);

  const auto estimate_impl = [](bool derivative, const std::string& model, const std::string& f,
                                const std::string& t, const std::string& eps, int64_t paths,
                                int steps, uint64_t seed, const std::string& scheme, int batches,
                                int threads) {
    const ModelSpace ms = model_from(model);
    const TestFunction fn = make_function(ms, f);
    const MCConfig mc = mc_from(paths, steps, seed, scheme, batches, threads);
    const Rational e = rational_from(eps, "eps");
    const Rational tt = rational_from(t, "t");
    return estimate_dict(derivative ? estimate_dptf(ms, e, fn, tt, mc)
                                    : estimate_ptf(ms, e, fn, tt, mc));
  };
  m.def(
      "estimate_ptf",
      [estimate_impl](const std::string& model, const std::string& f, const std::string& t,
                      const std::string& eps, int64_t paths, int steps, uint64_t seed,
                      const std::string& scheme, int batches, int threads) {
        return estimate_impl(false, model, f, t, eps, paths, steps, seed, scheme, batches, threads);
      },
      py::arg("model"), py::arg("f"), py::arg("t") = "1", py::arg("eps") = "1",
      py::arg("paths") = 100000, py::arg("steps") = 500, py::arg("seed") = 20250810,
      py::arg("scheme") = "exp_splitting", py::arg("batches") = 16, py::arg("threads") = 0);
  m.def(
      "estimate_dptf",
      [estimate_impl](const std::string& model, const std::string& f, const std::string& t,
                      const std::string& eps, int64_t paths, int steps, uint64_t seed,
                      const std::string& scheme, int batches, int threads) {
        return estimate_impl(true, model, f, t, eps, paths, steps, seed, scheme, batches, threads);
      },
      py::arg("model"), py::arg("f"), py::arg("t") = "1", py::arg("eps") = "1",
      py::arg("paths") = 100000, py::arg("steps") = 500, py::arg("seed") = 20250810,
      py::arg("scheme") = "exp_splitting", py::arg("batches") = 16, py::arg("threads") = 0);

  m.def(
      "check",
      [](const std::string& which, const std::string& model, const std::string& f,
         const std::string& t, const std::string& eps, int64_t paths, int steps, uint64_t seed,
         const std::string& scheme, int batches, int threads,
         const std::array<double, 2>& gamma) {
        const ModelSpace ms = model_from(model);
        const MCConfig mc = mc_from(paths, steps, seed, scheme, batches, threads);
        const Rational e = rational_from(eps, "eps");
        const Rational tt = rational_from(t, "t");
        InequalityReport rep;
        if (which == "gradient") {
          rep = check_gradient_bound(ms, e, make_function(ms, f), tt, mc);
        } else if (which == "poincare") {
          rep = check_poincare(ms, e, make_function(ms, f), tt, mc);
        } else if (which == "logsobolev") {
          rep = check_logsobolev(ms, e, make_function(ms, f), tt, mc);
        } else if (which == "ibp") {
          rep = check_ibp(ms, e, make_function(ms, f), tt,
                          PiecewiseControl::constant({gamma[0], gamma[1]}), mc);
        } else {
          throw std::invalid_argument("unknown check: " + which);
        }
        return inequality_dict(rep);
      },
      py::arg("which"), py::arg("model"), py::arg("f"), py::arg("t") = "1", py::arg("eps") = "1",
      py::arg("paths") = 100000, py::arg("steps") = 500, py::arg("seed") = 20250810,
      py::arg("scheme") = "exp_splitting", py::arg("batches") = 16, py::arg("threads") = 0,
      py::arg("gamma") = std::array<double, 2>{1.0, 0.0});

  m.def(
      "check_decay",
      [](const std::string& model, const std::vector<double>& ts,
         const std::array<double, 3>& alpha, int64_t paths, int steps, uint64_t seed, int batches,
         int threads) {
        const ModelSpace ms = model_from(model);
        const MCConfig mc = mc_from(paths, steps, seed, "exp_splitting", batches, threads);
        const DecayReport rep =
            check_decay(ms, Eigen::Vector3d(alpha[0], alpha[1], alpha[2]), ts, mc);
        py::dict d;
        d["eps_opt"] = to_fraction_string(rep.eps_opt);
        d["rate"] = rep.rate;
        d["slope"] = rep.slope;
        d["slope_limit"] = rep.slope_limit;
        d["slope_pass"] = rep.slope_pass;
        d["pass"] = rep.pass;
        py::list per_t;
        for (const auto& r : rep.per_t) per_t.append(inequality_dict(r));
        d["per_t"] = per_t;
        return d;
      },
      py::arg("model"), py::arg("ts") = std::vector<double>{1.0, 2.0, 4.0},
      py::arg("alpha") = std::array<double, 3>{1.0, 0.0, 0.0}, py::arg("paths") = 50000,
      py::arg("steps") = 500, py::arg("seed") = 20250810, py::arg("batches") = 16,
      py::arg("threads") = 0);

  m.def(
      "selftest_json",
      [](uint64_t seed, int threads, double scale) {
        SelftestOptions opts;
        opts.seed = seed;
        opts.threads = threads;
        opts.path_scale = scale;
        return selftest(opts).to_json();
      },
      py::arg("seed") = 20250810, py::arg("threads") = 0, py::arg("scale") = 1.0);

  m.def("function_names", [] { return function_names(); });
  m.attr("__version__") = "0.1.0";
}
