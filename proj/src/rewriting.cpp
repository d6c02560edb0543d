#include "lcpat/rewriting.hpp"

#include <algorithm>

#include "lcpat/constraint.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/solver.hpp"
#include "lcpat/substitution.hpp"

namespace lcpat {

namespace {

bool is_calc_redex(const Term& t) {
  if (!t.is_app() || !t.symbol().is_calculation()) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [](const Term& a) { return a.is_value(); });
}

// The contractum of a root step, if t is a root redex.
std::optional<Term> contract(const Term& t, const Lctrs& r) {
  if (is_calc_redex(t)) {
    try {
      return eval_ground(t);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  for (const auto& rule : r.rules) {
    auto gamma = more_general(rule.lhs, t);
    if (!gamma) continue;
    VarSet lhs_vars = vars(rule.lhs);
    VarSet logical = logical_vars(rule);
    bool values_only = std::all_of(logical.begin(), logical.end(), [&](const Var& x) {
      return !lhs_vars.count(x) || apply(Term::variable(x), *gamma).is_value();
    });
    if (!values_only) continue;
    Term g = apply(rule.guard, *gamma);
    Model m;
    if (is_ground(g)) {
      bool holds = false;
      try {
        holds = eval_constraint(g);
      } catch (const Error&) {
        holds = false;
      }
      if (!holds) continue;
    } else {
      SatResult res = builtin_sat(g);
      if (res.is_unsat()) continue;
      if (res.is_unknown()) {
        throw InconclusiveError("cannot decide guard '" + to_string(g) + "': " + res.reason);
      }
      m = std::move(res.model);
    }
    return ground_with(apply(rule.rhs, *gamma), m);
  }
  return std::nullopt;
}

}  // namespace

bool is_redex(const Term& t, const Lctrs& r) {
  if (!is_ground(t)) throw NonGroundTerm("'" + to_string(t) + "' is not ground");
  return contract(t, r).has_value();
}

std::optional<Term> rewrite_step(const Term& t, const Lctrs& r) {
  if (t.is_var()) return std::nullopt;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (auto inner = rewrite_step(t.args()[i], r)) {
      std::vector<Term> args(t.args().begin(), t.args().end());
      args[i] = *inner;
      return Term::apply(t.symbol_ptr(), std::move(args));
    }
  }
  return contract(t, r);
}

Term normalize(const Term& t, const Lctrs& r, std::size_t max_steps) {
  Term cur = t;
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto next = rewrite_step(cur, r);
    if (!next) break;
    cur = *next;
  }
  return cur;
}

}  // namespace lcpat
