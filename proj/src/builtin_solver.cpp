#include <sstream>

#include "lcpat/errors.hpp"
#include "lcpat/solver.hpp"
#include "lcpat/theory.hpp"
#include "linear.hpp"
#include "solver_internal.hpp"

namespace lcpat {

using detail::Leaf;

SolverStats& solver_stats() {
  static SolverStats stats;
  return stats;
}

std::string to_string(SatVerdict v) {
  switch (v) {
    case SatVerdict::Sat: return "sat";
    case SatVerdict::Unsat: return "unsat";
    case SatVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

namespace detail {

// Completes the model over Var(phi) and checks it by evaluation.
SatResult validated(const Term& phi, Model m) {
  auto& st = solver_stats();
  for (const auto& v : vars(phi)) {
    if (m.count(v)) continue;
    if (v.sort == Sort::Int()) m.insert_or_assign(v, theory::num(0));
    else if (v.sort == Sort::Bool()) m.insert_or_assign(v, theory::boolean(false));
  }
  bool ok = false;
  try {
    ok = eval_constraint(ground_with(phi, m));
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) {
    ++st.validation_failures;
    ++st.unknown;
    return SatResult::unknown("model failed validation");
  }
  ++st.models_validated;
  ++st.sat;
  return SatResult::sat(std::move(m));
}

SatResult record(SatResult r) {
  auto& st = solver_stats();
  if (r.is_unsat()) ++st.unsat;
  if (r.is_unknown()) ++st.unknown;
  return r;
}

}  // namespace detail

namespace {

SatResult solve_leaf(const Leaf& leaf) {
  VarSet ints;
  for (const auto& q : leaf.ineqs)
    for (const auto& [x, _] : q.a) ints.insert(x);
  auto proj = detail::eliminate(leaf.ineqs, ints);
  if (proj.status == detail::FmStatus::Infeasible) return SatResult::unsat();
  if (proj.status == detail::FmStatus::TooLarge)
    return SatResult::unknown("linear system too large");
  Model m;
  switch (detail::find_model(proj, m)) {
    case detail::SearchStatus::Exhausted: return SatResult::unsat();
    case detail::SearchStatus::GaveUp: return SatResult::unknown("integer search incomplete");
    case detail::SearchStatus::Found: break;
  }
  for (const auto& [x, b] : leaf.bools) m.insert_or_assign(x, theory::boolean(b));
  for (const auto& lit : leaf.opaque) {
    // Free variables only in opaque literals default to 0 / false.
    bool ok = false;
    try {
      ok = eval_constraint(ground_with(lit, m));
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) return SatResult::unknown("non-linear constraint");
  }
  return SatResult::sat(std::move(m));
}

}  // namespace

SatResult builtin_sat(const Term& phi) {
  if (!(phi.sort() == Sort::Bool())) throw SortMismatch("constraint must have sort bool");
  if (!is_theory_term(phi)) throw EvalError("constraint contains non-theory symbols");
  std::optional<SatResult> found;
  std::string unknown_reason;
  bool complete = detail::for_each_branch(phi, [&](Leaf& leaf) {
    SatResult r = solve_leaf(leaf);
    if (r.is_sat()) {
      SatResult v = detail::validated(phi, std::move(r.model));
      if (v.is_sat()) {
        found = std::move(v);
        return false;
      }
      unknown_reason = v.reason;
      return true;
    }
    if (r.is_unknown() && unknown_reason.empty()) unknown_reason = r.reason;
    return true;
  });
  if (found) return *found;
  if (!complete) return detail::record(SatResult::unknown("too many case splits"));
  if (!unknown_reason.empty()) return detail::record(SatResult::unknown(unknown_reason));
  return detail::record(SatResult::unsat());
}

std::optional<Term> project_exists(const Term& phi, const VarSet& ex) {
  if (ex.empty()) return phi;
  std::vector<Term> disjuncts;
  bool failed = false;
  bool complete = detail::for_each_branch(phi, [&](Leaf& leaf) {
    for (const auto& lit : leaf.opaque) {
      for (const auto& v : vars(lit)) {
        if (ex.count(v)) {
          failed = true;
          return false;
        }
      }
    }
    auto proj = detail::eliminate(leaf.ineqs, ex);
    if (proj.status == detail::FmStatus::Infeasible) return true;
    if (proj.status == detail::FmStatus::TooLarge || !proj.exact) {
      failed = true;
      return false;
    }
    std::vector<Term> parts;
    for (const auto& q : proj.residue) parts.push_back(detail::ineq_to_term(q));
    for (const auto& [x, b] : leaf.bools) {
      if (ex.count(x)) continue;
      Term v = Term::variable(x);
      parts.push_back(b ? v : theory::mk_not(v));
    }
    for (const auto& lit : leaf.opaque) parts.push_back(lit);
    disjuncts.push_back(conjunction(parts));
    return true;
  });
  if (failed || !complete) return std::nullopt;
  return disjunction(disjuncts);
}

EquivVerdict builtin_equiv(const Term& phi, const Term& psi, const VarSet& ex_phi,
                           const VarSet& ex_psi) {
  auto a = project_exists(phi, ex_phi);
  auto b = project_exists(psi, ex_psi);
  if (!a || !b) return EquivVerdict::Unknown;
  Term differ = theory::mk_or(theory::mk_and(*a, theory::mk_not(*b)),
                              theory::mk_and(theory::mk_not(*a), *b));
  SatResult r = builtin_sat(differ);
  if (r.is_unsat()) return EquivVerdict::Equiv;
  if (r.is_sat()) return EquivVerdict::NotEquiv;
  return EquivVerdict::Unknown;
}

}  // namespace lcpat
