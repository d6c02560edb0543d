// Command-line front end: check, complement and diff over LCTRS files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/io.hpp"
#include "lcpat/oracle.hpp"
#include "lcpat/quasi_reducibility.hpp"
#include "lcpat/rewriting.hpp"
#include "lcpat/theory.hpp"

using namespace lcpat;

namespace {

enum Exit { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

struct Options {
  std::string solver = "builtin";
  std::string solver_cmd;
  int timeout_ms = 5000;
  std::string format = "text";
  bool oracle_check = false;
  std::string int_range = "-2..2";
  unsigned max_height = 4;
  std::string equiv = "syntactic";
};

struct InputError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const std::string& path, const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds) std::cerr << path << ":" << to_string(d) << "\n";
}

Lctrs load_lctrs(const std::string& path, const std::set<std::string>& extra = {}) {
  auto res = parse_lctrs(read_file(path), extra);
  report(path, res.diagnostics);
  if (!res.lctrs) throw InputError{"'" + path + "' has errors"};
  return std::move(*res.lctrs);
}

FiniteFragment fragment(const Options& o) {
  FiniteFragment f;
  auto dots = o.int_range.find("..");
  if (dots == std::string::npos) throw InputError{"--int-range expects a..b"};
  try {
    std::size_t used = 0;
    f.int_lo = std::stoll(o.int_range.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("lo");
    std::string hi = o.int_range.substr(dots + 2);
    f.int_hi = std::stoll(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("hi");
  } catch (const std::exception&) {
    throw InputError{"--int-range expects a..b, got '" + o.int_range + "'"};
  }
  f.max_height = o.max_height;
  try {
    check_fragment(f);
  } catch (const Error& e) {
    throw InputError{e.what()};
  }
  return f;
}

Solver make_solver(const Options& o) {
  SolverConfig cfg;
  cfg.timeout_ms = o.timeout_ms;
  cfg.external_cmd = o.solver_cmd;
  if (cfg.external_cmd.empty()) {
    if (const char* env = std::getenv("LCPAT_SOLVER_CMD")) cfg.external_cmd = env;
  }
  if (o.solver == "external") {
    if (cfg.external_cmd.empty()) {
      throw InputError{"--solver external needs --solver-cmd or LCPAT_SOLVER_CMD"};
    }
    cfg.order = {Backend::External};
  } else if (!cfg.external_cmd.empty()) {
    cfg.order = {Backend::Builtin, Backend::External};
  }
  return Solver(cfg);
}

EquivMode equiv_mode(const Options& o) {
  return o.equiv == "semantic" ? EquivMode::Semantic : EquivMode::Syntactic;
}

std::string with_oracle(const std::string& json, const std::optional<bool>& oracle) {
  if (!oracle) return json;
  auto j = nlohmann::ordered_json::parse(json);
  j["oracle"] = *oracle ? "ok" : "mismatch";
  return j.dump();
}

void print_oracle(const Options& o, bool ok) {
  if (o.format == "text") std::cout << "oracle: " << (ok ? "OK" : "MISMATCH") << "\n";
}

int cmd_check(const Options& o, const std::string& path) {
  Lctrs sys = load_lctrs(path);
  report(path, validate(sys));
  Solver solver = make_solver(o);
  QrVerdict v;
  try {
    v = quasi_reducible(sys, solver, {equiv_mode(o), 100000});
  } catch (const ValidationFailed& e) {
    throw InputError{e.what()};
  }
  v.diagnostics.clear();  // already reported on stderr

  std::optional<bool> oracle;
  if (o.oracle_check) {
    FiniteFragment frag = fragment(o);
    bool ok = true;
    if (v.kind == QrKind::NotQuasiReducible) {
      GroundOracle g(sys.signature, frag);
      for (const auto& w : v.witnesses)
        for (const auto& t : g.ginst_terms(w)) ok = ok && !is_redex(t, sys);
    } else if (v.kind == QrKind::QuasiReducible) {
      for (const auto& t : ground_patterns(sys.signature, frag)) ok = ok && is_redex(t, sys);
    }
    oracle = ok;
  }

  if (o.format == "json") {
    std::cout << with_oracle(export_json(v, &sys.signature), oracle) << "\n";
  } else {
    std::cout << "verdict: " << to_string(v.kind) << "\n";
    if (v.kind == QrKind::Unknown) std::cout << "reason: " << v.reason << "\n";
    for (const auto& w : v.witnesses)
      std::cout << print_constrained_pattern(w, &sys.signature) << "\n";
    if (oracle) print_oracle(o, *oracle);
  }
  if (oracle && !*oracle) return kUnknown;
  switch (v.kind) {
    case QrKind::QuasiReducible: return kYes;
    case QrKind::NotQuasiReducible: return kNo;
    case QrKind::Unknown: return kUnknown;
  }
  return kUnknown;
}

int print_outcome(const Options& o, const DiffOutcome& out, const Signature& sig,
                  const std::optional<bool>& oracle, bool note_complete) {
  if (o.format == "json") {
    std::cout << with_oracle(export_json(out, &sig), oracle) << "\n";
  } else {
    if (!out.exact()) std::cout << "# inconclusive: " << out.reason << "\n";
    for (const auto& c : out.result) std::cout << print_constrained_pattern(c, &sig) << "\n";
    if (oracle) print_oracle(o, *oracle);
  }
  if (note_complete && out.result.empty() && out.exact()) std::cerr << "complete\n";
  if (oracle && !*oracle) return kUnknown;
  return out.exact() ? kYes : kUnknown;
}

int cmd_complement(const Options& o, const std::string& path) {
  Lctrs sys = load_lctrs(path);
  auto diags = validate(sys);
  report(path, diags);
  if (has_errors(diags)) throw InputError{"'" + path + "' violates the procedure's hypotheses"};
  Solver solver = make_solver(o);
  FreshVars fresh;
  ConstrainedSet q = lhs_patterns(sys, fresh);
  ConstructorUniverse cu(sys.signature);
  DiffContext ctx{cu, solver, fresh, equiv_mode(o), 100000, nullptr};
  DiffOutcome out = copat(q, sys.signature, ctx);
  std::optional<bool> oracle;
  if (o.oracle_check) {
    FiniteFragment frag = fragment(o);
    ConstrainedSet all;
    for (const auto& f : sys.signature.defined_symbols()) {
      std::vector<Term> args;
      for (const auto& s : f->arg_sorts) args.push_back(fresh.fresh_term(s, "g"));
      all.push_back({Term::apply(f, args), theory::top()});
    }
    oracle = check_diff_semantics(all, q, out.result, frag, sys.signature);
  }
  return print_outcome(o, out, sys.signature, oracle, true);
}

ConstrainedSet load_patterns(const std::string& path, const Signature& sig, FreshVars& fresh) {
  auto res = parse_patterns(read_file(path), sig);
  report(path, res.diagnostics);
  if (!res.patterns) throw InputError{"'" + path + "' has errors"};
  ConstrainedSet out;
  for (const auto& c : *res.patterns) {
    if (!is_pattern(c.term)) {
      throw InputError{path + ": '" + to_string(c.term) + "' is not a pattern"};
    }
    if (!is_linear(c.term)) {
      throw InputError{path + ": '" + to_string(c.term) + "' is not linear"};
    }
    fresh.reserve(vars(c));
    out.push_back(value_free(c, fresh));
  }
  return out;
}

int cmd_diff(const Options& o, const std::string& sig_path, const std::string& p_path,
             const std::string& q_path) {
  std::set<std::string> roots = pattern_roots(read_file(p_path));
  auto more = pattern_roots(read_file(q_path));
  roots.insert(more.begin(), more.end());
  Lctrs sys = load_lctrs(sig_path, roots);
  FreshVars fresh;
  ConstrainedSet p = load_patterns(p_path, sys.signature, fresh);
  ConstrainedSet q = load_patterns(q_path, sys.signature, fresh);
  Solver solver = make_solver(o);

  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      auto other = rename_apart(p[j], vars(p[i]), fresh);
      if (check_unifiable(p[i], other, solver).verdict != Tri::No) {
        throw InputError{p_path + ": patterns " + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1) + " may overlap"};
      }
    }
  }

  ConstructorUniverse cu(sys.signature);
  DiffContext ctx{cu, solver, fresh, equiv_mode(o), 100000, nullptr};
  DiffOutcome out = diff_sets(p, q, ctx);
  std::optional<bool> oracle;
  if (o.oracle_check) oracle = check_diff_semantics(p, q, out.result, fragment(o), sys.signature);
  return print_outcome(o, out, sys.signature, oracle, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complements and quasi-reducibility for logically constrained rewrite systems",
               "lcpat"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--solver", o.solver, "Satisfiability backend")
        ->check(CLI::IsMember({"builtin", "external"}));
    sub->add_option("--solver-cmd", o.solver_cmd,
                    "SMT-LIB2 solver command line (default: $LCPAT_SOLVER_CMD)");
    sub->add_option("--timeout-ms", o.timeout_ms, "Per-query timeout of the external solver")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--oracle-check", o.oracle_check,
                  "Cross-check the result by ground enumeration");
    sub->add_option("--int-range", o.int_range, "Oracle integer range a..b");
    sub->add_option("--max-height", o.max_height, "Oracle term height bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--equiv", o.equiv, "Duplicate detection for set union")
        ->check(CLI::IsMember({"syntactic", "semantic"}));
  };

  std::string file, sig_file, p_file, q_file;
  auto* check = app.add_subcommand("check", "Decide quasi-reducibility");
  add_common(check);
  check->add_option("file", file, "LCTRS file")->required();
  auto* complement = app.add_subcommand("complement", "Print the complement of the rule lhs");
  add_common(complement);
  complement->add_option("file", file, "LCTRS file")->required();
  auto* diff = app.add_subcommand("diff", "Difference of two constrained pattern sets");
  add_common(diff);
  diff->add_option("--sig", sig_file, "File declaring sorts and symbols")->required();
  diff->add_option("dividends", p_file, "Pattern file P")->required();
  diff->add_option("divisors", q_file, "Pattern file Q")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(o, file);
    if (*complement) return cmd_complement(o, file);
    return cmd_diff(o, sig_file, p_file, q_file);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kInputError;
  } catch (const SolverUnavailable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknown;
  }
}
