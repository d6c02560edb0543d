#include "lcpat/difference.hpp"

#include <algorithm>
#include <map>

#include "lcpat/complement.hpp"
#include "lcpat/constraint.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"
#include "lcpat/unification.hpp"

namespace lcpat {

std::string to_string(DiffStatus s) {
  return s == DiffStatus::Exact ? "exact" : "inconclusive";
}

std::vector<Term> diff_unconstrained(const Term& s, const Term& t, const ConstructorUniverse& cu,
                                     FreshVars& fresh) {
  fresh.reserve(s);
  fresh.reserve(t);
  ConstrainedTerm tc{t, theory::top()};
  Term t2 = rename_apart(tc, vars(s), fresh).term;
  auto sigma = unify(s, t2);
  if (!sigma) return {s};
  return copattern(s, *sigma, cu, fresh);
}

namespace {

// A dividend together with a divisor renamed apart and made value-free, plus their mgu.
struct Pairing {
  ConstrainedTerm s;
  ConstrainedTerm t;
  Tri verdict = Tri::No;
  Substitution sigma;
  std::string reason;
};

Pairing pair_up(const ConstrainedTerm& dividend, const ConstrainedTerm& divisor,
                DiffContext& ctx) {
  if (!is_value_free(dividend.term)) {
    throw DividendNotValueFree("dividend '" + to_string(dividend) + "' contains values");
  }
  if (!is_linear(divisor.term)) {
    throw DivisorNotLinear("divisor '" + to_string(divisor) + "' is not linear");
  }
  ctx.fresh.reserve(vars(dividend));
  ctx.fresh.reserve(vars(divisor));
  Pairing out{dividend,
              value_free(rename_apart(divisor, vars(dividend), ctx.fresh), ctx.fresh),
              Tri::No, {}, {}};
  auto check = check_unifiable(out.s, out.t, ctx.solver);
  out.verdict = check.verdict;
  out.reason = check.reason;
  if (check.unifier) out.sigma = check.unifier->mgu;
  return out;
}

// ⟨s|φ⟩ ⊖ ⟨t|ψ⟩ given σ = mgu(s, t) of the renamed-apart pair.
void one_side(const ConstrainedTerm& s, const ConstrainedTerm& t, const Substitution& sigma,
              DiffContext& ctx, DiffOutcome& out) {
  Term phi_sigma = apply(s.constraint, sigma);
  for (const auto& u : copattern(s.term, sigma, ctx.universe, ctx.fresh))
    out.result.push_back({u, phi_sigma});

  // Existential variables of ψ must be projected away before negation.
  Term psi = t.constraint;
  VarSet ex = existential_vars(t);
  if (!ex.empty()) {
    if (auto projected = project_exists(psi, ex)) {
      psi = *projected;
    } else {
      out.mark_inconclusive("divisor constraint has existential variables that cannot be "
                            "eliminated exactly");
    }
  }
  Term residue = theory::mk_and(phi_sigma, theory::mk_not(apply(psi, sigma)));
  SatResult r = ctx.solver.check_sat(residue);
  if (r.is_unsat()) return;
  if (r.is_unknown()) out.mark_inconclusive("satisfiability unknown: " + r.reason);
  out.result.push_back({apply(s.term, sigma), residue});
}

}  // namespace

DiffOutcome diff(const ConstrainedTerm& dividend, const ConstrainedTerm& divisor,
                 DiffContext& ctx) {
  Pairing p = pair_up(dividend, divisor, ctx);
  DiffOutcome out;
  if (p.verdict == Tri::No) {
    out.result.push_back(dividend);
    return out;
  }
  if (p.verdict == Tri::Unknown) out.mark_inconclusive("unifiability unknown: " + p.reason);
  one_side(p.s, p.t, p.sigma, ctx, out);
  return out;
}

bool is_effective(const ConstrainedTerm& s, const ConstrainedTerm& t, DiffContext& ctx) {
  return pair_up(s, t, ctx).verdict != Tri::No;
}

namespace {

void sort_canonically(ConstrainedSet& xs) {
  std::vector<std::pair<std::string, ConstrainedTerm>> keyed;
  for (auto& x : xs) keyed.emplace_back(canonical_key(x), x);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  xs.clear();
  for (auto& [_, x] : keyed) xs.push_back(x);
}

}  // namespace

DiffOutcome diff_sets(const ConstrainedSet& p0, const ConstrainedSet& q0, DiffContext& ctx) {
  ConstrainedSet p = p0, q = q0;
  for (const auto& c : p) ctx.fresh.reserve(vars(c));
  for (const auto& c : q) ctx.fresh.reserve(vars(c));
  DiffOutcome out;
  std::map<std::pair<std::string, std::string>, bool> effective;

  for (std::size_t step = 0;; ++step) {
    sort_canonically(p);
    sort_canonically(q);
    if (ctx.trace) ctx.trace->push_back({p, q});
    if (step >= ctx.max_steps) {
      out.mark_inconclusive("step limit reached");
      break;
    }

    std::optional<Pairing> chosen;
    std::size_t si = 0, ti = 0;
    for (std::size_t i = 0; i < p.size() && !chosen; ++i) {
      std::string pk = canonical_key(p[i]);
      for (std::size_t j = 0; j < q.size(); ++j) {
        auto key = std::make_pair(pk, canonical_key(q[j]));
        auto it = effective.find(key);
        if (it != effective.end() && !it->second) continue;
        Pairing pr = pair_up(p[i], q[j], ctx);
        effective[key] = pr.verdict != Tri::No;
        if (pr.verdict == Tri::No) continue;
        chosen = std::move(pr);
        si = i;
        ti = j;
        break;
      }
    }
    if (!chosen) break;
    if (chosen->verdict == Tri::Unknown) {
      out.mark_inconclusive("unifiability unknown: " + chosen->reason);
    }

    DiffOutcome s_minus_t, t_minus_s;
    one_side(chosen->s, chosen->t, chosen->sigma, ctx, s_minus_t);
    one_side(chosen->t, chosen->s, chosen->sigma, ctx, t_minus_s);
    if (!s_minus_t.exact()) out.mark_inconclusive(s_minus_t.reason);
    if (!t_minus_s.exact()) out.mark_inconclusive(t_minus_s.reason);

    p.erase(p.begin() + static_cast<std::ptrdiff_t>(si));
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(ti));
    p = dotted_union(p, s_minus_t.result, ctx.mode, &ctx.solver);
    q = dotted_union(q, t_minus_s.result, ctx.mode, &ctx.solver);
  }
  out.result = std::move(p);
  return out;
}

Weight diff_weight(const ConstrainedSet& p, const ConstrainedSet& q, DiffContext& ctx) {
  Weight w;
  for (const auto& s : p) {
    std::size_t n = 0;
    for (const auto& t : q)
      if (is_effective(s, t, ctx)) ++n;
    w.emplace_back(s.term, n);
  }
  return w;
}

bool weight_greater(const Weight& m, const Weight& n) {
  auto equivalent = [](const auto& a, const auto& b) {
    return a.second == b.second && canonical_key(a.first) == canonical_key(b.first);
  };
  auto greater = [](const auto& a, const auto& b) {
    if (strictly_more_general(a.first, b.first)) return true;
    return canonical_key(a.first) == canonical_key(b.first) && a.second > b.second;
  };
  std::vector<bool> used_n(n.size(), false);
  std::vector<const Weight::value_type*> x, y;
  for (const auto& a : m) {
    bool matched = false;
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (!used_n[j] && equivalent(a, n[j])) {
        used_n[j] = matched = true;
        break;
      }
    }
    if (!matched) x.push_back(&a);
  }
  for (std::size_t j = 0; j < n.size(); ++j)
    if (!used_n[j]) y.push_back(&n[j]);
  if (x.empty()) return false;
  return std::all_of(y.begin(), y.end(), [&](const auto* b) {
    return std::any_of(x.begin(), x.end(), [&](const auto* a) { return greater(*a, *b); });
  });
}

}  // namespace lcpat
