// Python bindings over text inputs; results travel as the CLI's JSON documents.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcpat/errors.hpp"
#include "lcpat/io.hpp"
#include "lcpat/quasi_reducibility.hpp"

namespace py = pybind11;
using namespace lcpat;

namespace {

Solver make_solver(const std::string& solver_cmd, int timeout_ms) {
  SolverConfig cfg;
  cfg.timeout_ms = timeout_ms;
  cfg.external_cmd = solver_cmd;
  if (!solver_cmd.empty()) cfg.order = {Backend::Builtin, Backend::External};
  return Solver(cfg);
}

EquivMode equiv_mode(const std::string& equiv) {
  if (equiv == "syntactic") return EquivMode::Syntactic;
  if (equiv == "semantic") return EquivMode::Semantic;
  throw py::value_error("equiv must be 'syntactic' or 'semantic'");
}

std::string join(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += (out.empty() ? "" : "\n") + to_string(d);
  return out;
}

Lctrs load(const std::string& text, const std::set<std::string>& extra = {}) {
  auto res = parse_lctrs(text, extra);
  if (!res.lctrs) throw py::value_error(join(res.diagnostics));
  return std::move(*res.lctrs);
}

ConstrainedSet load_patterns(const std::string& text, const Signature& sig, FreshVars& fresh) {
  auto res = parse_patterns(text, sig);
  if (!res.patterns) throw py::value_error(join(res.diagnostics));
  ConstrainedSet out;
  for (const auto& c : *res.patterns) {
    if (!is_pattern(c.term) || !is_linear(c.term)) {
      throw py::value_error("'" + to_string(c.term) + "' is not a linear pattern");
    }
    fresh.reserve(vars(c));
    out.push_back(value_free(c, fresh));
  }
  return out;
}

std::vector<std::string> diagnostics(const std::string& text) {
  auto res = parse_lctrs(text);
  std::vector<std::string> out;
  for (const auto& d : res.diagnostics) out.push_back(to_string(d));
  if (res.lctrs)
    for (const auto& d : validate(*res.lctrs)) out.push_back(to_string(d));
  return out;
}

std::string check(const std::string& text, const std::string& solver_cmd, int timeout_ms,
                  const std::string& equiv) {
  Lctrs sys = load(text);
  Solver solver = make_solver(solver_cmd, timeout_ms);
  QrVerdict v;
  {
    py::gil_scoped_release release;
    v = quasi_reducible(sys, solver, {equiv_mode(equiv), 100000});
  }
  return export_json(v, &sys.signature);
}

std::string complement(const std::string& text, const std::string& solver_cmd, int timeout_ms,
                       const std::string& equiv) {
  Lctrs sys = load(text);
  auto diags = validate(sys);
  if (has_errors(diags)) throw py::value_error(join(diags));
  Solver solver = make_solver(solver_cmd, timeout_ms);
  FreshVars fresh;
  ConstrainedSet q = lhs_patterns(sys, fresh);
  ConstructorUniverse cu(sys.signature);
  DiffContext ctx{cu, solver, fresh, equiv_mode(equiv), 100000, nullptr};
  py::gil_scoped_release release;
  return export_json(copat(q, sys.signature, ctx), &sys.signature);
}

std::string diff_text(const std::string& sig_text, const std::string& p_text,
                      const std::string& q_text, const std::string& solver_cmd, int timeout_ms,
                      const std::string& equiv) {
  auto roots = pattern_roots(p_text);
  auto more = pattern_roots(q_text);
  roots.insert(more.begin(), more.end());
  Lctrs sys = load(sig_text, roots);
  FreshVars fresh;
  ConstrainedSet p = load_patterns(p_text, sys.signature, fresh);
  ConstrainedSet q = load_patterns(q_text, sys.signature, fresh);
  Solver solver = make_solver(solver_cmd, timeout_ms);
  ConstructorUniverse cu(sys.signature);
  DiffContext ctx{cu, solver, fresh, equiv_mode(equiv), 100000, nullptr};
  py::gil_scoped_release release;
  return export_json(diff_sets(p, q, ctx), &sys.signature);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Complements and quasi-reducibility for logically constrained rewrite systems";
  py::register_exception<Error>(m, "LcpatError", PyExc_RuntimeError);

  m.def("diagnostics", &diagnostics, py::arg("text"),
        "Parse and validation messages of an LCTRS text.");
  m.def("check", &check, py::arg("text"), py::arg("solver_cmd") = "",
        py::arg("timeout_ms") = 5000, py::arg("equiv") = "syntactic",
        "Quasi-reducibility verdict as a JSON document.");
  m.def("complement", &complement, py::arg("text"), py::arg("solver_cmd") = "",
        py::arg("timeout_ms") = 5000, py::arg("equiv") = "syntactic",
        "Complement of the rule left-hand sides as a JSON document.");
  m.def("diff", &diff_text, py::arg("sig_text"), py::arg("p_text"), py::arg("q_text"),
        py::arg("solver_cmd") = "", py::arg("timeout_ms") = 5000,
        py::arg("equiv") = "syntactic", "Difference P minus Q as a JSON document.");
}
