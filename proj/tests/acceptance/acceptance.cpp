// Acceptance driver: one PASS/FAIL/SKIP line per criterion. Exit status is 0 when the set of
// failing criteria equals the --expect-fail list (empty by default), 1 otherwise.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcpat/complement.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/oracle.hpp"
#include "lcpat/rewriting.hpp"
#include "lcpat/theory.hpp"
#include "lcpat/unification.hpp"
#include "testkit.hpp"

using namespace lcpat;
using namespace testkit;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned thresholds.
constexpr double kR1Seconds = 2.0;
constexpr double kR1PrimeSeconds = 5.0;
constexpr int kSingleDiffRuns = 500;
constexpr int kSetRuns = 200;
constexpr int kMguRuns = 500;
constexpr int kSolverCorpus = 200;
const FiniteFragment kWideFragment{-3, 3, 5};
const FiniteFragment kPropFragment{-2, 2, 4};

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Pass;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::Skip, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return ok ? pass(std::move(d)) : fail(std::move(d)); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliRun {
  int exit_code = -1;
  std::string out;
  double seconds = 0;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  std::string cmd = std::string(LCPAT_CLI_PATH) + " " + args + " 2>/dev/null";
  auto t0 = Clock::now();
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.seconds = seconds_since(t0);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

// Criterion 1 -----------------------------------------------------------------

Outcome r1_verdict() {
  CliRun run = run_cli("check " + fixture("r1.lctrs") + " --format json");
  if (run.exit_code != 1) return fail("exit code " + std::to_string(run.exit_code));
  auto doc = nlohmann::json::parse(run.out, nullptr, false);
  if (doc.is_discarded() || !doc.contains("witnesses")) return fail("unparsable output");
  const auto& ws = doc["witnesses"];
  if (ws.size() != 3) return fail(std::to_string(ws.size()) + " witnesses");

  Lctrs r1 = load_fixture("r1.lctrs");
  const Signature& sig = r1.signature;
  GroundOracle oracle(sig, kWideFragment);
  std::vector<std::set<std::string>> expected;
  for (const char* text :
       {"f(nil, ya) [not (ya <= 0)]", "f(cons(xb, nil), yb) [not (xb <= 0 /\\ yb > 0)]",
        "f(cons(xc, cons(zc, zsc)), yc) [not (xc <= 0 /\\ yc > 0) /\\ not (xc > 0 /\\ yc > 1)]"})
    expected.push_back(oracle.ginst(parse_constrained(text, sig)));

  std::vector<bool> used(expected.size(), false);
  std::size_t ground = 0;
  for (const auto& w : ws) {
    auto ct = parse_constrained(w["term"].get<std::string>() + " [" +
                                    w["constraint"].get<std::string>() + "]",
                                sig);
    auto got = oracle.ginst(ct);
    bool matched = false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!used[i] && expected[i] == got) {
        used[i] = matched = true;
        break;
      }
    }
    if (!matched) return fail("witness " + to_string(ct) + " matches none of (a)/(b)/(c)");
    for (const auto& g : oracle.ginst_terms(ct)) {
      ++ground;
      if (is_redex(g, r1)) return fail(to_string(g) + " is a redex");
    }
  }
  std::string d = "3 witnesses = (a)/(b)/(c) on ints -3..3, h<=5; " + std::to_string(ground) +
                  " ground instances, none a redex; cli " + fmt_seconds(run.seconds);
  return verdict(run.seconds < kR1Seconds, d);
}

// Criterion 2 -----------------------------------------------------------------

Outcome r1prime_verdict() {
  CliRun run = run_cli("check " + fixture("r1prime.lctrs"));
  if (run.exit_code != 0) return fail("exit code " + std::to_string(run.exit_code));
  auto t0 = Clock::now();
  Lctrs r = load_fixture("r1prime.lctrs");
  auto gps = ground_patterns(r.signature, kWideFragment);
  for (const auto& g : gps)
    if (!is_redex(g, r)) return fail(to_string(g) + " is not a redex");
  double total = run.seconds + seconds_since(t0);
  return verdict(total < kR1PrimeSeconds, "exit 0; " + std::to_string(gps.size()) +
                                              " ground patterns all redexes; " +
                                              fmt_seconds(total));
}

// Criterion 3 -----------------------------------------------------------------

bool same_up_to_renaming(const std::vector<Term>& got, const std::vector<Term>& want) {
  return got.size() == want.size() && keys(got) == keys(want);
}

Outcome golden_cocterm() {
  Sigma1 s1;
  ConstructorUniverse cu(s1.sig);
  cu.with_finite_ints({0, 1});
  struct Case {
    const char* input;
    std::vector<const char*> want;
  };
  std::vector<Case> cases = {
      {"0", {"1"}},
      {"1", {"0"}},
      {"nil", {"cons(x, xs)"}},
      {"cons(0, cons(z3, zs3))", {"nil", "cons(1, ys)", "cons(0, nil)"}},
  };
  for (const auto& c : cases) {
    FreshVars fresh;
    Term u = s1.t(c.input);
    fresh.reserve(u);
    std::vector<Term> want;
    for (auto w : c.want) want.push_back(s1.t(w));
    auto got = cocterm(u, cu, fresh);
    if (!same_up_to_renaming(got, want)) return fail(std::string("cocterm(") + c.input + ")");
  }
  return pass("4 golden complements over {nil, cons, 0, 1}");
}

// Criterion 4 -----------------------------------------------------------------

Outcome golden_unconstrained_diff() {
  Sigma1 s1;
  ConstructorUniverse cu(s1.sig);
  cu.with_finite_ints({0, 1});
  FreshVars fresh;
  Term s = s1.t("f(xs, y)");
  Term t = s1.t("f(nil, 0)");
  fresh.reserve(s);
  auto got = diff_unconstrained(s, t, cu, fresh);
  std::vector<Term> want = {s1.t("f(nil, 1)"), s1.t("f(cons(x1, xs1), 0)"),
                            s1.t("f(cons(x1, xs1), 1)")};
  std::string listing;
  for (const auto& g : got) listing += (listing.empty() ? "" : ", ") + to_string(g);
  return verdict(same_up_to_renaming(got, want), "{" + listing + "}");
}

// Criterion 5 -----------------------------------------------------------------

Outcome golden_constrained_diff() {
  Sigma1 s1;
  ConstructorUniverse cu(s1.sig);
  Solver solver;
  FreshVars fresh;
  auto a = s1.ct("f(xs, y) [true]");
  auto b = s1.ct("f(nil, y1) [y1 <= 0]");
  fresh.reserve(vars(a));
  fresh.reserve(vars(b));
  DiffContext ctx{cu, solver, fresh};
  auto out = diff(a, b, ctx);
  if (!out.exact()) return fail("inconclusive: " + out.reason);
  if (out.result.size() != 2) return fail(std::to_string(out.result.size()) + " patterns");
  ConstrainedSet want = {s1.ct("f(nil, ya) [not (ya <= 0)]"), s1.ct("f(cons(x1, xs1), y2) [true]")};
  GroundOracle oracle(s1.sig, kWideFragment);
  std::vector<std::set<std::string>> got_sets, want_sets;
  for (const auto& c : out.result) got_sets.push_back(oracle.ginst(c));
  for (const auto& c : want) want_sets.push_back(oracle.ginst(c));
  bool ok = (got_sets[0] == want_sets[0] && got_sets[1] == want_sets[1]) ||
            (got_sets[0] == want_sets[1] && got_sets[1] == want_sets[0]);
  return verdict(ok, "2 patterns, GInst equal member-wise on ints -3..3, h<=5");
}

// Criterion 6 -----------------------------------------------------------------

bool pairwise_disjoint(const std::vector<std::set<std::string>>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      for (const auto& k : sets[i])
        if (sets[j].count(k)) return false;
  return true;
}

Outcome single_diff_suite() {
  PropSig ps;
  ConstructorUniverse cu(ps.sig);
  GroundOracle oracle(ps.sig, kPropFragment);
  Solver solver;
  Gen gen(ps, 20260601);
  std::array<int, 5> failures{};
  int effective = 0, residual_same = 0, inconclusive = 0;
  std::string first;
  auto note = [&](int item, const std::string& what) {
    ++failures[item - 1];
    if (first.empty()) first = "item (" + std::to_string(item) + "): " + what;
  };

  for (int run = 0; run < kSingleDiffRuns; ++run) {
    GenOptions dopt;
    dopt.linear = gen.chance(0.6);
    gen.set_prefix("a");
    auto dividend = gen.pattern(dopt);
    GenOptions topt;
    topt.values = true;
    gen.set_prefix("b");
    auto divisor = gen.pattern(topt);

    FreshVars fresh;
    fresh.reserve(vars(dividend));
    fresh.reserve(vars(divisor));
    DiffContext ctx{cu, solver, fresh};
    auto out = diff(dividend, divisor, ctx);
    if (!out.exact()) {
      ++inconclusive;
      if (first.empty()) first = "inconclusive: " + out.reason;
      continue;
    }

    std::vector<std::set<std::string>> sets;
    for (const auto& u : out.result) sets.push_back(oracle.ginst(u));
    if (!pairwise_disjoint(sets)) note(1, to_string(dividend) + " - " + to_string(divisor));

    if (is_linear(dividend.term))
      for (const auto& u : out.result)
        if (!is_linear(u.term)) note(2, to_string(u));

    // sσ for the value-free divisor identifies the residual branch.
    FreshVars scratch;
    scratch.reserve(vars(dividend));
    scratch.reserve(vars(divisor));
    auto t_vf = value_free(divisor, scratch);
    auto sigma = unify(dividend.term, t_vf.term);
    std::string residual_key = sigma ? canonical_key(apply(dividend.term, *sigma)) : "";
    // A pair that is not constrained-unifiable returns the dividend unchanged.
    bool is_effective_pair = out.result != ConstrainedSet{dividend};
    if (is_effective_pair) ++effective;
    for (const auto& u : out.result) {
      if (!more_general(dividend.term, u.term)) {
        note(3, to_string(u) + " is not an instance of " + to_string(dividend));
        continue;
      }
      bool residual = sigma && canonical_key(u.term) == residual_key;
      if (residual) {
        if (canonical_key(u.term) == canonical_key(dividend.term)) ++residual_same;
      } else if (is_effective_pair && !strictly_more_general(dividend.term, u.term)) {
        note(3, to_string(u) + " not strictly below " + to_string(dividend));
      }
    }

    unsigned bound = std::max(dividend.term.height(), t_vf.term.height());
    for (const auto& u : out.result)
      if (u.term.height() > bound) note(4, to_string(u));

    if (!check_diff_semantics({dividend}, {divisor}, out.result, kPropFragment, ps.sig))
      note(5, to_string(dividend) + " - " + to_string(divisor));
  }
  int total = failures[0] + failures[1] + failures[2] + failures[3] + failures[4] + inconclusive;
  std::ostringstream os;
  os << kSingleDiffRuns << " pairs (" << effective << " effective, " << residual_same
     << " residuals equal to s); failures (1)=" << failures[0] << " (2)=" << failures[1]
     << " (3)=" << failures[2] << " (4)=" << failures[3] << " (5)=" << failures[4]
     << " inconclusive=" << inconclusive;
  if (!first.empty()) os << "; first: " << first;
  return verdict(total == 0, os.str());
}

// Criterion 7 -----------------------------------------------------------------

std::string show(const Weight& w) {
  std::string out = "{";
  for (const auto& [t, n] : w)
    out += (out.size() > 1 ? ", (" : "(") + to_string(t) + ", " + std::to_string(n) + ")";
  return out + "}";
}

Outcome set_semantics() {
  PropSig ps;
  ConstructorUniverse cu(ps.sig);
  GroundOracle oracle(ps.sig, kPropFragment);
  Solver solver;
  Gen gen(ps, 20260602);
  int semantic_failures = 0, overlap_failures = 0, inconclusive = 0;
  int weight_violations = 0, steps = 0;
  std::string first_weight, first;

  for (int run = 0; run < kSetRuns; ++run) {
    GenOptions popt;
    gen.set_prefix("p");
    ConstrainedSet p;
    std::vector<std::set<std::string>> p_sets;
    int want = gen.pick(1, 3);
    for (int attempt = 0; attempt < 12 && static_cast<int>(p.size()) < want; ++attempt) {
      auto cand = gen.pattern(popt, true);
      auto cand_set = oracle.ginst(cand);
      bool ok = true;
      for (std::size_t i = 0; i < p.size() && ok; ++i) {
        ok = check_unifiable(p[i], cand, solver).verdict == Tri::No;
        for (const auto& k : cand_set)
          if (ok && p_sets[i].count(k)) ok = false;
      }
      if (ok) {
        p.push_back(cand);
        p_sets.push_back(std::move(cand_set));
      }
    }

    FreshVars fresh;
    for (const auto& c : p) fresh.reserve(vars(c));
    GenOptions qopt;
    qopt.values = true;
    gen.set_prefix("q");
    ConstrainedSet q;
    int nq = gen.pick(1, 3);
    for (int i = 0; i < nq; ++i) {
      auto c = gen.pattern(qopt, true);
      fresh.reserve(vars(c));
      q.push_back(c);
    }
    for (auto& c : q) c = value_free(c, fresh);

    std::vector<DiffStep> trace;
    DiffContext ctx{cu, solver, fresh};
    ctx.trace = &trace;
    auto out = diff_sets(p, q, ctx);
    if (!out.exact()) {
      ++inconclusive;
      if (first.empty()) first = "inconclusive: " + out.reason;
      continue;
    }
    if (!check_diff_semantics(p, q, out.result, kPropFragment, ps.sig)) {
      ++semantic_failures;
      if (first.empty()) first = "semantics on run " + std::to_string(run);
    }
    std::vector<std::set<std::string>> sets;
    for (const auto& u : out.result) sets.push_back(oracle.ginst(u));
    if (!pairwise_disjoint(sets)) ++overlap_failures;

    DiffContext wctx{cu, solver, fresh};
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      ++steps;
      auto before = diff_weight(trace[i].p, trace[i].q, wctx);
      auto after = diff_weight(trace[i + 1].p, trace[i + 1].q, wctx);
      if (!weight_greater(before, after)) {
        ++weight_violations;
        if (first_weight.empty()) {
          first_weight = "run " + std::to_string(run) + ", " + show(before) + " to " + show(after);
        }
      }
    }
  }
  std::ostringstream os;
  os << kSetRuns << " runs, " << steps << " recursion steps; semantic failures="
     << semantic_failures << " overlapping outputs=" << overlap_failures
     << " inconclusive=" << inconclusive << " weight violations=" << weight_violations;
  if (!first.empty()) os << "; first: " << first;
  if (!first_weight.empty()) os << "; first weight violation: " << first_weight;
  bool ok = semantic_failures == 0 && overlap_failures == 0 && inconclusive == 0 &&
            weight_violations == 0;
  return verdict(ok, os.str());
}

// Criterion 8 -----------------------------------------------------------------

Outcome mgu_linearity() {
  PropSig ps;
  Gen gen(ps, 20260603);
  int unifiable = 0, failures = 0;
  std::string first;
  for (int run = 0; run < kMguRuns; ++run) {
    GenOptions sopt;
    sopt.linear = false;
    sopt.values = true;
    sopt.max_depth = 3;
    sopt.constraint = false;
    gen.set_prefix("a");
    Term s = gen.pattern(sopt).term;
    GenOptions topt = sopt;
    topt.linear = true;
    gen.set_prefix("b");
    Term t = gen.pattern(topt).term;
    auto sigma = unify(s, t);
    if (!sigma) continue;
    ++unifiable;
    VarSet xs = vars(s);
    bool ok = apply(s, *sigma) == apply(t, *sigma);
    for (const auto& x : xs) ok = ok && is_linear(apply(Term::variable(x), *sigma));
    ok = ok && is_linearity_preserving(sigma->restrict(xs), xs);
    if (!ok) {
      ++failures;
      if (first.empty()) first = "; first: " + to_string(s) + " =? " + to_string(t);
    }
  }
  return verdict(failures == 0 && unifiable > 0,
                 std::to_string(kMguRuns) + " problems, " + std::to_string(unifiable) +
                     " unifiable, " + std::to_string(failures) + " failures" + first);
}

// Criterion 9 -----------------------------------------------------------------

Outcome example_reduction() {
  Lctrs r1 = load_fixture("r1.lctrs");
  Term t = parse_term("f(cons(1, cons(2, cons(0, cons(3, cons(4, nil))))), 5)", r1.signature);
  int steps = 0;
  while (auto next = rewrite_step(t, r1)) {
    t = *next;
    if (++steps > 1000) return fail("no normal form after 1000 steps");
  }
  return verdict(t == theory::num(4),
                 "normal form " + to_string(t) + " after " + std::to_string(steps) + " steps");
}

// Criterion 10 ----------------------------------------------------------------

std::string external_command() {
  if (const char* env = std::getenv("LCPAT_SOLVER_CMD"); env && *env) return env;
  if (std::system("command -v z3 >/dev/null 2>&1") == 0) return "z3 -in";
  return "";
}

Outcome solver_agreement() {
  auto& stats = solver_stats();
  std::ostringstream os;
  bool ok = stats.validation_failures == 0 && stats.models_validated > 0;
  os << stats.models_validated << " models validated, " << stats.validation_failures
     << " failures";

  std::string cmd = external_command();
  if (cmd.empty()) {
    os << "; external backend skipped (no solver configured)";
    return ok ? skip(os.str()) : fail(os.str());
  }
  SolverConfig cfg;
  cfg.order = {Backend::External};
  cfg.external_cmd = cmd;
  Solver ext(cfg);
  PropSig ps;
  Gen gen(ps, 20260604);
  std::vector<Var> ints = {{"x", Sort::Int()}, {"y", Sort::Int()}, {"z", Sort::Int()}};
  int agree = 0, disagree = 0;
  std::string first;
  for (int i = 0; i < kSolverCorpus; ++i) {
    Term phi = gen.constraint_over(ints);
    SatVerdict a = builtin_sat(phi).verdict;
    SatVerdict b;
    try {
      b = ext.check_sat(phi).verdict;
    } catch (const Error& e) {
      return fail(os.str() + "; external solver error: " + e.what());
    }
    if (a == b && a != SatVerdict::Unknown) {
      ++agree;
    } else {
      ++disagree;
      if (first.empty()) first = to_string(phi);
    }
  }
  ok = ok && disagree == 0 && stats.validation_failures == 0;
  os << "; builtin vs '" << cmd << "': " << agree << "/" << kSolverCorpus << " agree";
  if (!first.empty()) os << "; first mismatch: " << first;
  return verdict(ok, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail,
                 "Criteria documented as failing; they still print FAIL");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"R1 verdict", r1_verdict},
      {"R1' verdict", r1prime_verdict},
      {"golden Cocterm", golden_cocterm},
      {"golden unconstrained diff", golden_unconstrained_diff},
      {"golden constrained diff", golden_constrained_diff},
      {"single difference properties", single_diff_suite},
      {"set difference semantics and weight", set_semantics},
      {"mgu linearity", mgu_linearity},
      {"Example reduction to 4", example_reduction},
      {"solver self-check", solver_agreement},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    if (o.status == Status::Fail) failed.insert(static_cast<int>(i + 1));
    std::cout << "[" << tag << "] " << (i + 1) << ". " << criteria[i].name << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed.size()) << "/" << criteria.size()
            << " criteria without failure" << std::endl;
  std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (!expected.empty()) {
    std::cout << "documented failures expected:";
    for (int c : expected) std::cout << " " << c;
    std::cout << (failed == expected ? " (matched)" : " (mismatch)") << std::endl;
  }
  return failed == expected ? 0 : 1;
}
