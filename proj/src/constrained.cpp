#include "lcpat/constrained.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <map>

#include "lcpat/constraint.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"
#include "lcpat/unification.hpp"

namespace lcpat {

ConstrainedTerm make_constrained(Term term, Term constraint) {
  if (!(constraint.sort() == Sort::Bool())) {
    throw SortMismatch("constraint '" + to_string(constraint) + "' is not of sort bool");
  }
  if (!is_theory_term(constraint)) {
    throw SortMismatch("constraint '" + to_string(constraint) + "' is not a theory term");
  }
  return {std::move(term), std::move(constraint)};
}

VarSet vars(const ConstrainedTerm& ct) {
  VarSet out = vars(ct.term);
  collect_vars(ct.constraint, out);
  return out;
}

VarSet existential_vars(const ConstrainedTerm& ct) {
  VarSet in_term = vars(ct.term);
  VarSet out;
  for (const auto& v : vars(ct.constraint))
    if (!in_term.count(v)) out.insert(v);
  return out;
}

bool is_value_free(const ConstrainedTerm& ct) { return is_value_free(ct.term); }

ConstrainedTerm apply(const ConstrainedTerm& ct, const Substitution& s) {
  return {apply(ct.term, s), apply(ct.constraint, s)};
}

std::string to_string(const ConstrainedTerm& ct) {
  return to_string(ct.term) + " [" + to_string(ct.constraint) + "]";
}

namespace {

// Variables numbered by first occurrence across term then constraint.
Term number_vars(const Term& t, std::map<Var, Var>& names) {
  if (t.is_var()) {
    auto it = names.find(t.var());
    if (it == names.end()) {
      Var v{"?" + std::to_string(names.size()), t.sort()};
      it = names.emplace(t.var(), v).first;
    }
    return Term::variable(it->second);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(number_vars(a, names));
  return Term::apply(t.symbol_ptr(), std::move(args));
}

}  // namespace

std::string canonical_key(const ConstrainedTerm& ct) {
  std::map<Var, Var> names;
  Term t = number_vars(ct.term, names);
  Term c = number_vars(simplify_cosmetic(ct.constraint), names);
  return canonical_key(t) + " [" + to_string(c) + "]";
}

ConstrainedTerm normalized(const ConstrainedTerm& ct, const std::set<std::string>& reserved) {
  std::vector<Var> order = vars_in_order(ct.term);
  for (const auto& v : vars_in_order(ct.constraint))
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  std::set<std::string> taken;
  Substitution ren;
  for (const auto& v : order) {
    std::string name = base_name(v.name);
    while (taken.count(name) || reserved.count(name) || theory::is_reserved_name(name)) name += "'";
    taken.insert(name);
    ren.bind(v, Term::variable(name, v.sort));
  }
  return {apply(ct.term, ren), simplify_cosmetic(apply(ct.constraint, ren))};
}

ConstrainedTerm value_free(const ConstrainedTerm& ct, FreshVars& fresh) {
  fresh.reserve(vars(ct));
  std::vector<Term> eqs;
  std::function<Term(const Term&)> rec = [&](const Term& t) -> Term {
    if (t.is_var()) return t;
    if (t.is_value()) {
      Term y = fresh.fresh_term(t.sort(), t.sort() == Sort::Bool() ? "b" : "y");
      eqs.push_back(theory::mk_eq(y, t));
      return y;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(rec(a));
    return Term::apply(t.symbol_ptr(), std::move(args));
  };
  Term nt = rec(ct.term);
  Term phi = ct.constraint;
  for (const auto& e : eqs) phi = theory::mk_and(phi, e);
  return {nt, phi};
}

ConstrainedTerm rename_apart(const ConstrainedTerm& ct, const VarSet& avoid, FreshVars& fresh) {
  VarSet own = vars(ct);
  fresh.reserve(own);
  fresh.reserve(avoid);
  Substitution ren;
  for (const auto& v : own)
    if (avoid.count(v)) ren.bind(v, fresh.fresh_term(v.sort, v.name));
  return apply(ct, ren);
}

UnifiabilityCheck check_unifiable(const ConstrainedTerm& a, const ConstrainedTerm& b,
                                  Solver& solver) {
  UnifiabilityCheck out;
  auto theta = unify(a.term, b.term);
  if (!theta) return out;
  VarSet cvars = vars(a.constraint);
  collect_vars(b.constraint, cvars);
  for (const auto& x : cvars) {
    Term img = apply(Term::variable(x), *theta);
    if (!img.is_var() && !img.is_value()) return out;
  }
  Term merged = theory::mk_and(apply(a.constraint, *theta), apply(b.constraint, *theta));
  SatResult r = solver.check_sat(merged);
  if (r.is_unsat()) return out;
  out.unifier = Unifier{*theta, merged};
  if (r.is_sat()) {
    out.verdict = Tri::Yes;
  } else {
    out.verdict = Tri::Unknown;
    out.reason = r.reason;
  }
  return out;
}

std::optional<Unifier> constrained_unifiable(const ConstrainedTerm& a, const ConstrainedTerm& b,
                                             Solver& solver) {
  auto r = check_unifiable(a, b, solver);
  if (r.verdict == Tri::Unknown) {
    throw InconclusiveError("satisfiability of the merged constraint is unknown: " + r.reason);
  }
  if (r.verdict == Tri::No) return std::nullopt;
  return r.unifier;
}

std::string to_string(DotEq d) {
  switch (d) {
    case DotEq::Equal: return "equal";
    case DotEq::NotEqual: return "not-equal";
    case DotEq::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

struct Renaming {
  std::map<Var, Var> fwd;
  std::map<Var, Var> bwd;

  bool link(const Var& from, const Var& to) {
    if (!(from.sort == to.sort)) return false;
    auto f = fwd.find(from);
    auto b = bwd.find(to);
    if (f != fwd.end() || b != bwd.end()) {
      return f != fwd.end() && b != bwd.end() && f->second == to && b->second == from;
    }
    fwd.emplace(from, to);
    bwd.emplace(to, from);
    return true;
  }
};

// Extends r so that `from` renamed by r equals `to`. `free` limits which unmapped
// variables may still be linked (nullptr: any).
bool match_renaming(const Term& from, const Term& to, Renaming& r, const VarSet* linkable) {
  if (from.is_var() || to.is_var()) {
    if (!from.is_var() || !to.is_var()) return false;
    if (!r.fwd.count(from.var()) && linkable && !linkable->count(from.var())) return false;
    return r.link(from.var(), to.var());
  }
  if (!same_symbol(from.symbol(), to.symbol())) return false;
  for (std::size_t i = 0; i < from.args().size(); ++i)
    if (!match_renaming(from.args()[i], to.args()[i], r, linkable)) return false;
  return true;
}

bool match_conjuncts(const std::vector<Term>& from, std::size_t i, const std::vector<Term>& to,
                     std::vector<bool>& used, const Renaming& r, const VarSet& linkable) {
  if (i == from.size()) return true;
  for (std::size_t j = 0; j < to.size(); ++j) {
    if (used[j]) continue;
    Renaming next = r;
    if (!match_renaming(from[i], to[j], next, &linkable)) continue;
    used[j] = true;
    if (match_conjuncts(from, i + 1, to, used, next, linkable)) return true;
    used[j] = false;
  }
  return false;
}

}  // namespace

DotEq dot_equal(const ConstrainedTerm& a, const ConstrainedTerm& b, EquivMode mode,
                Solver* solver) {
  // δ maps b's term variables onto a's.
  Renaming delta;
  if (!match_renaming(b.term, a.term, delta, nullptr)) return DotEq::NotEqual;

  VarSet a_shared, b_shared_renamed;
  VarSet a_term = vars(a.term);
  VarSet b_term = vars(b.term);
  for (const auto& v : vars(a.constraint))
    if (a_term.count(v)) a_shared.insert(v);
  for (const auto& v : vars(b.constraint))
    if (b_term.count(v)) b_shared_renamed.insert(delta.fwd.at(v));
  if (a_shared != b_shared_renamed) return DotEq::NotEqual;

  std::vector<Term> ca = conjuncts(simplify_cosmetic(a.constraint));
  std::vector<Term> cb = conjuncts(simplify_cosmetic(b.constraint));
  if (ca.size() == cb.size()) {
    std::vector<bool> used(ca.size(), false);
    VarSet linkable = existential_vars(b);
    if (match_conjuncts(cb, 0, ca, used, delta, linkable)) return DotEq::Equal;
  }
  if (mode == EquivMode::Syntactic || !solver) return DotEq::Unknown;

  // Semantic: rename b's existential variables apart from everything in a.
  FreshVars fresh;
  fresh.reserve(vars(a));
  fresh.reserve(vars(b));
  Substitution ren;
  for (const auto& [from, to] : delta.fwd) ren.bind(from, Term::variable(to));
  VarSet ex_b;
  for (const auto& v : existential_vars(b)) {
    Var nv = fresh.fresh(v.sort, v.name);
    ren.bind(v, Term::variable(nv));
    ex_b.insert(nv);
  }
  Term psi = apply(b.constraint, ren);
  switch (solver->check_equiv(a.constraint, psi, existential_vars(a), ex_b)) {
    case EquivVerdict::Equiv: return DotEq::Equal;
    case EquivVerdict::NotEquiv: return DotEq::NotEqual;
    case EquivVerdict::Unknown: return DotEq::Unknown;
  }
  return DotEq::Unknown;
}

ConstrainedSet dotted_union(const ConstrainedSet& p, const ConstrainedSet& q, EquivMode mode,
                            Solver* solver) {
  ConstrainedSet out;
  auto add = [&](const ConstrainedTerm& c) {
    for (const auto& r : out)
      if (dot_equal(r, c, mode, solver) == DotEq::Equal) return;
    out.push_back(c);
  };
  for (const auto& c : p) add(c);
  for (const auto& c : q) add(c);
  return out;
}

}  // namespace lcpat
