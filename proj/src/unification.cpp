#include "lcpat/unification.hpp"

#include "lcpat/errors.hpp"

namespace lcpat {

namespace {

VarSet vars_except(const UnificationProblem& p, std::size_t skip) {
  VarSet out;
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    if (i == skip) continue;
    collect_vars(p.equations[i].lhs, out);
    collect_vars(p.equations[i].rhs, out);
  }
  return out;
}

void substitute_except(UnificationProblem& p, std::size_t skip, const Var& x, const Term& t) {
  Substitution s;
  s.bind(x, t);
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    if (i == skip) continue;
    p.equations[i].lhs = apply(p.equations[i].lhs, s);
    p.equations[i].rhs = apply(p.equations[i].rhs, s);
  }
}

}  // namespace

bool is_solved(const UnificationProblem& p) {
  VarSet solved;
  VarSet rhs_vars;
  for (const auto& e : p.equations) {
    const Term* var_side = nullptr;
    const Term* other = nullptr;
    if (e.lhs.is_var()) {
      var_side = &e.lhs;
      other = &e.rhs;
    } else if (e.rhs.is_var()) {
      var_side = &e.rhs;
      other = &e.lhs;
    } else {
      return false;
    }
    if (!solved.insert(var_side->var()).second) return false;
    collect_vars(*other, rhs_vars);
  }
  for (const auto& x : solved)
    if (rhs_vars.count(x)) return false;
  return true;
}

std::optional<UnificationProblem> solved_form(UnificationProblem p, UnifyStats* stats) {
  UnifyStats local;
  UnifyStats& st = stats ? *stats : local;
  for (const auto& e : p.equations) {
    if (!(e.lhs.sort() == e.rhs.sort())) {
      throw SortMismatch("unification of terms with sorts " + e.lhs.sort().name() + " and " +
                         e.rhs.sort().name());
    }
  }
  for (;;) {
    if (is_solved(p)) return p;
    auto& eqs = p.equations;
    bool applied = false;

    // Delete
    for (std::size_t i = 0; i < eqs.size() && !applied; ++i) {
      if (eqs[i].lhs == eqs[i].rhs) {
        eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
        ++st.deletes;
        applied = true;
      }
    }
    if (applied) continue;

    // Decompose (a symbol clash makes the problem unsolvable)
    for (std::size_t i = 0; i < eqs.size() && !applied; ++i) {
      const auto& e = eqs[i];
      if (e.lhs.is_var() || e.rhs.is_var()) continue;
      if (!same_symbol(e.lhs.symbol(), e.rhs.symbol())) return std::nullopt;
      std::vector<Equation> parts;
      for (std::size_t k = 0; k < e.lhs.args().size(); ++k)
        parts.push_back({e.lhs.args()[k], e.rhs.args()[k]});
      eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(i));
      eqs.insert(eqs.begin() + static_cast<std::ptrdiff_t>(i), parts.begin(), parts.end());
      ++st.decomposes;
      applied = true;
    }
    if (applied) continue;

    // EliminateL
    for (std::size_t i = 0; i < eqs.size() && !applied; ++i) {
      if (!eqs[i].lhs.is_var()) continue;
      const Var x = eqs[i].lhs.var();
      const Term t = eqs[i].rhs;
      if (occurs(x, t)) return std::nullopt;
      if (!vars_except(p, i).count(x)) continue;
      substitute_except(p, i, x, t);
      ++st.eliminate_l;
      applied = true;
    }
    if (applied) continue;

    // EliminateR, restricted to a non-variable left side
    for (std::size_t i = 0; i < eqs.size() && !applied; ++i) {
      if (!eqs[i].rhs.is_var() || eqs[i].lhs.is_var()) continue;
      const Var x = eqs[i].rhs.var();
      const Term t = eqs[i].lhs;
      if (occurs(x, t)) return std::nullopt;
      if (!vars_except(p, i).count(x)) continue;
      substitute_except(p, i, x, t);
      ++st.eliminate_r;
      applied = true;
    }
    if (applied) continue;

    return std::nullopt;
  }
}

Substitution solved_substitution(const UnificationProblem& p) {
  Substitution out;
  for (const auto& e : p.equations) {
    if (e.lhs.is_var()) {
      out.bind(e.lhs.var(), e.rhs);
    } else if (e.rhs.is_var()) {
      out.bind(e.rhs.var(), e.lhs);
    } else {
      throw Error("unification problem is not in solved form");
    }
  }
  return out;
}

std::optional<Substitution> unify(const Term& s, const Term& t, UnifyStats* stats) {
  UnificationProblem p;
  p.equations.push_back({s, t});
  auto solved = solved_form(std::move(p), stats);
  if (!solved) return std::nullopt;
  return solved_substitution(*solved);
}

}  // namespace lcpat
