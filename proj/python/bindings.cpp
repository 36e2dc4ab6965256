#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "symred/models.hpp"
#include "symred/rank.hpp"
#include "symred/report.hpp"

namespace py = pybind11;
using namespace symred;

namespace {

using Params = std::map<std::string, std::string>;

std::map<std::string, Rational> rationals(const Params& params) {
  std::map<std::string, Rational> out;
  for (const auto& [k, v] : params) out[k] = Rational::parse(v);
  return out;
}

struct Session {
  Workspace ws;
  SamplePlan plan;
  Session(const std::string& location, const Params& params, std::optional<std::uint64_t> seed)
      : ws(load_workspace(location, rationals(params))), plan(default_plan(ws)) {
    if (seed) plan.seeds = {*seed, *seed + 1, *seed + 2};
  }
};

std::string as_json(const std::string& command, const SamplePlan& plan, Json report) {
  return envelope(command, plan, std::move(report)).dump();
}

}  // namespace

PYBIND11_MODULE(_symred, m) {
  m.doc() = "Symmetry reduction toolkit";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_RuntimeError);
  py::register_exception<SamplingStarvation>(m, "SamplingStarvation", PyExc_RuntimeError);

  m.def("builtin_ids", &builtin_ids);
  m.def("builtin_source", &builtin_source, py::arg("id"));

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));

  m.def(
      "normalize", [](const std::string& text) { return to_string(normalize(parse_expression(text))); },
      py::arg("text"));
  m.def(
      "differentiate",
      [](const std::string& text, const std::string& var) { return to_string(differentiate(parse_expression(text), var)); },
      py::arg("text"), py::arg("var"));
  m.def(
      "evaluate",
      [](const std::string& text, const std::map<std::string, Complex>& values) {
        Binding b;
        b.values = values;
        return evaluate(parse_expression(text), b);
      },
      py::arg("text"), py::arg("values"));

  m.def(
      "classify",
      [](const std::string& ws, const std::string& algebra, std::optional<std::string> candidate, const Params& params,
         std::optional<std::uint64_t> seed) {
        Session s(ws, params, seed);
        const CandidateSolution* c = candidate ? &s.ws.candidate(*candidate).candidate : nullptr;
        auto rep = classify_transversality(s.ws.algebra(algebra).algebra, s.ws.space, s.plan, c);
        return as_json("classify", s.plan, to_json(rep));
      },
      py::arg("workspace"), py::arg("algebra"), py::arg("candidate") = py::none(), py::arg("params") = Params{},
      py::arg("seed") = py::none());

  m.def(
      "defect",
      [](const std::string& ws, const std::string& algebra, const std::string& candidate, const Params& params,
         std::optional<std::uint64_t> seed) {
        Session s(ws, params, seed);
        Workspace w = workspace_for_candidate(s.ws, candidate);
        auto rep = defect(w.algebra(algebra).algebra, w.candidate(candidate).candidate, w.space, s.plan);
        return as_json("defect", s.plan, to_json(rep));
      },
      py::arg("workspace"), py::arg("algebra"), py::arg("candidate"), py::arg("params") = Params{},
      py::arg("seed") = py::none());

  m.def(
      "residual",
      [](const std::string& ws, const std::string& candidate, std::optional<std::string> system, const Params& params,
         std::optional<std::uint64_t> seed) {
        Session s(ws, params, seed);
        std::string sys = system.value_or(s.ws.systems.begin()->first);
        auto rep = sys == "vnse" ? vnls_residual(s.ws, candidate, s.plan) : residual(s.ws, sys, candidate, s.plan);
        return as_json("verify", s.plan, to_json(rep));
      },
      py::arg("workspace"), py::arg("candidate"), py::arg("system") = py::none(), py::arg("params") = Params{},
      py::arg("seed") = py::none());

  m.def(
      "kernel",
      [](const std::string& ws, const std::string& algebra, const std::string& candidate, const Params& params,
         std::optional<std::uint64_t> seed) {
        Session s(ws, params, seed);
        Workspace w = workspace_for_candidate(s.ws, candidate);
        const auto& a = w.algebra(algebra);
        auto rep = constant_kernel_generators(a.algebra, w.candidate(candidate).candidate, w.space, s.plan,
                                              a.combinations);
        return as_json("kernel", s.plan, to_json(rep));
      },
      py::arg("workspace"), py::arg("algebra"), py::arg("candidate"), py::arg("params") = Params{},
      py::arg("seed") = py::none());

  m.def(
      "closure",
      [](const std::string& ws, const std::string& algebra, std::optional<std::string> within, const Params& params) {
        Session s(ws, params, std::nullopt);
        const auto& a = s.ws.algebra(algebra).algebra;
        const auto& w = within ? s.ws.algebra(*within).algebra : a;
        return as_json("closure", s.plan, to_json(closure_check(a, w, s.ws.space, s.plan), a, w));
      },
      py::arg("workspace"), py::arg("algebra"), py::arg("within") = py::none(), py::arg("params") = Params{});
}
