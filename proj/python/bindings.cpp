// SPDX-License-Identifier: Apache-2.0
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "monobox/boxcover.hpp"
#include "monobox/error.hpp"
#include "monobox/estimator.hpp"
#include "monobox/funcs.hpp"
#include "monobox/measure.hpp"
#include "monobox/metrics.hpp"
#include "monobox/refine.hpp"
#include "monobox/stochastic.hpp"

namespace py = pybind11;
using namespace monobox;

namespace {

using Function = std::shared_ptr<MonotoneFunction>;

Function mutable_ptr(const FunctionPtr& f) { return std::const_pointer_cast<MonotoneFunction>(f); }

Measure make_measure(const std::vector<std::tuple<double, double, double>>& pieces,
                     const std::vector<std::tuple<double, double>>& atoms) {
  std::vector<DensityPiece> ps;
  for (const auto& [a, b, d] : pieces) ps.push_back({a, b, d});
  std::vector<Atom> as;
  for (const auto& [x, m] : atoms) as.push_back({x, m});
  return Measure(std::move(ps), std::move(as));
}

py::dict run_dict(const RunResult& r, std::size_t evaluations) {
  py::list records;
  for (const auto& s : r.trace.records)
    records.append(py::make_tuple(s.t, s.evaluations, s.x_new, s.certificate));
  py::dict d;
  d["tau"] = r.trace.tau;
  d["stop"] = std::string(to_string(r.trace.stop));
  d["certificate"] = r.certificate;
  d["evaluations"] = evaluations;
  d["estimator"] = r.estimator;
  d["queries"] = r.queries;
  d["records"] = records;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Adaptive approximation of non-decreasing functions with certified error";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DegenerateInterval>(m, "DegenerateInterval", domain.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ResolutionExhausted>(m, "ResolutionExhausted", base.ptr());
  py::register_exception<Unmeterable>(m, "Unmeterable", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

  py::class_<Measure>(m, "Measure")
      .def(py::init(&make_measure), py::arg("pieces"), py::arg("atoms") = std::vector<std::tuple<double, double>>{},
           "Piecewise-constant density [(a, b, density), ...] plus atoms [(x, mass), ...].")
      .def_static("lebesgue", &Measure::lebesgue)
      .def("mass_open", &Measure::mass_open, py::arg("a"), py::arg("b"))
      .def("atom_mass", &Measure::atom_mass, py::arg("x"))
      .def("conditional_median", &Measure::conditional_median, py::arg("a"), py::arg("b"))
      .def("conditional_quantile", &Measure::conditional_quantile, py::arg("a"), py::arg("b"),
           py::arg("q"))
      .def("density_at", &Measure::density_at, py::arg("x"))
      .def("breakpoints", &Measure::breakpoints)
      .def_property_readonly("is_lebesgue", &Measure::is_lebesgue)
      .def("__repr__", &Measure::describe);

  py::class_<MonotoneFunction, Function>(m, "MonotoneFunction")
      .def("__call__", &MonotoneFunction::operator(), py::arg("x"))
      .def_property_readonly("name", &MonotoneFunction::name)
      .def_property_readonly("meterable", &MonotoneFunction::meterable);

  py::class_<PiecewiseLinearEstimator>(m, "Estimator")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("xs"), py::arg("ys"))
      .def("__call__", &PiecewiseLinearEstimator::operator(), py::arg("x"))
      .def_property_readonly("breakpoints", [](const PiecewiseLinearEstimator& e) {
        return std::vector<double>(e.breakpoints().begin(), e.breakpoints().end());
      })
      .def_property_readonly("values", [](const PiecewiseLinearEstimator& e) {
        return std::vector<double>(e.values().begin(), e.values().end());
      });

  m.def("catalog", [](const std::string& name) { return mutable_ptr(catalog(name)); },
        py::arg("name"), "Built-in function by name, e.g. 'square' or 'worst_case(2)'.");
  m.def("catalog_names", &catalog_names);
  m.def(
      "piecewise",
      [](const std::string& name, const std::vector<std::tuple<double, std::string, std::vector<double>>>& pieces) {
        std::vector<PieceSpec> specs;
        for (const auto& [start, kind, coeffs] : pieces)
          specs.push_back({start, piece_kind_from_string(kind), coeffs});
        return mutable_ptr(piecewise(name, std::move(specs)));
      },
      py::arg("name"), py::arg("pieces"),
      "Right-continuous piecewise function from [(start, kind, coefficients), ...].");
  m.def(
      "from_callable",
      [](const std::string& name, const std::function<double(double)>& fn) {
        return std::make_shared<MonotoneFunction>(name, fn);
      },
      py::arg("name"), py::arg("fn"), "Black-box function without metadata; cannot be metered.");
  m.def("worst_case_f", [](int k) { return mutable_ptr(worst_case_f(OscillatorParams(k))); },
        py::arg("k"));
  m.def("experiment_g", [](int k) { return mutable_ptr(experiment_g(OscillatorParams(k))); },
        py::arg("k"));

  m.def(
      "run",
      [](const Function& f, double eps, int p, const Measure& measure, const std::string& policy,
         const std::string& tie, std::size_t max_iters) {
        FunctionOracle oracle(f);
        RunOptions opts;
        opts.policy = policy_from_string(policy);
        opts.tie = tie_break_from_string(tie);
        opts.max_iters = max_iters;
        const RunResult r = run(oracle, eps, p, measure, opts);
        return run_dict(r, oracle.call_count());
      },
      py::arg("f"), py::arg("eps"), py::arg("p") = 1, py::arg("measure") = Measure::lebesgue(),
      py::arg("policy") = "area", py::arg("tie") = "rightmost",
      py::arg("max_iters") = std::size_t{1} << 22,
      "Refines until the certificate reaches eps^p.");
  m.def(
      "run_fixed_budget",
      [](const Function& f, std::size_t t, int p, const Measure& measure, const std::string& policy,
         const std::string& tie) {
        FunctionOracle oracle(f);
        const RunResult r = run_fixed_budget(oracle, t, p, measure, policy_from_string(policy),
                                             tie_break_from_string(tie));
        return run_dict(r, oracle.call_count());
      },
      py::arg("f"), py::arg("t"), py::arg("p") = 1, py::arg("measure") = Measure::lebesgue(),
      py::arg("policy") = "area", py::arg("tie") = "rightmost",
      "Refines until t boxes exist.");

  m.def(
      "lp_error",
      [](const PiecewiseLinearEstimator& e, const Function& f, int p, const Measure& measure) {
        return lp_error(e, *f, p, measure);
      },
      py::arg("estimator"), py::arg("f"), py::arg("p") = 1, py::arg("measure") = Measure::lebesgue());
  m.def(
      "lp_distance",
      [](const Function& a, const Function& b, int p, const Measure& measure) {
        return lp_distance(*a, *b, p, measure);
      },
      py::arg("a"), py::arg("b"), py::arg("p") = 1, py::arg("measure") = Measure::lebesgue());
  m.def(
      "integral", [](const Function& f, const Measure& measure) { return integral(*f, measure); },
      py::arg("f"), py::arg("measure") = Measure::lebesgue());
  m.def(
      "loglog_slope",
      [](const std::vector<std::pair<double, double>>& series) { return loglog_slope(series); },
      py::arg("series"));
  m.def(
      "affine_error_bound_check",
      [](double c0, double c1, double c2, double a, double b, int p) {
        const auto r = affine_error_bound_check({c0, c1, c2}, a, b, p);
        return py::make_tuple(r.error, r.bound, r.holds);
      },
      py::arg("c0"), py::arg("c1"), py::arg("c2"), py::arg("a"), py::arg("b"), py::arg("p"),
      "(error, bound, holds) for the chord of c0 + c1 x + c2 x^2 on [a, b].");

  py::class_<BoxCover>(m, "BoxCover")
      .def(py::init([](std::vector<double> breakpoints, std::vector<std::pair<double, double>> bands) {
             BoxCover c{std::move(breakpoints), std::move(bands)};
             c.validate();
             return c;
           }),
           py::arg("breakpoints"), py::arg("bands"))
      .def_readonly("breakpoints", &BoxCover::breakpoints)
      .def_readonly("bands", &BoxCover::bands)
      .def("__len__", &BoxCover::size);
  m.def("cover_total", &cover_total, py::arg("cover"), py::arg("p"), py::arg("measure"));
  m.def(
      "constructive_cover",
      [](const Function& f, std::size_t n, int p, const Measure& measure) {
        return constructive_cover(*f, n, p, measure);
      },
      py::arg("f"), py::arg("n"), py::arg("p") = 1, py::arg("measure") = Measure::lebesgue());
  m.def("split_cover", &split_cover, py::arg("cover"), py::arg("n"), py::arg("p"),
        py::arg("measure"), py::arg("eps"));
  m.def(
      "oracle_n",
      [](const Function& f, double eps, int p, const Measure& measure, const std::string& mode,
         std::size_t points) {
        const GridSample s = sample_on_grid(*f, breakpoint_grid(*f, measure, points));
        return oracle_N(s, eps, p, measure, cover_mode_from_string(mode));
      },
      py::arg("f"), py::arg("eps"), py::arg("p") = 1, py::arg("measure") = Measure::lebesgue(),
      py::arg("mode") = "total", py::arg("points") = 257,
      "Grid-restricted box-covering number; None when no grid cover qualifies.");

  m.def(
      "integrate",
      [](const Function& f, double eps, const Measure& measure, std::uint64_t seed) {
        FunctionOracle oracle(f);
        const IntegralRun r = run_integral(oracle, eps, measure, seed);
        py::dict d;
        d["estimate"] = r.estimate;
        d["certificate"] = r.plan.certificate;
        d["tau"] = r.plan.trace.tau;
        d["evaluations"] = r.evaluations;
        d["samples"] = r.samples;
        return d;
      },
      py::arg("f"), py::arg("eps"), py::arg("measure") = Measure::lebesgue(), py::arg("seed") = 0,
      "Stochastic integral estimate with its certificate.");
}
