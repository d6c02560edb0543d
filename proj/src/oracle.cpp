#include "lcpat/oracle.hpp"

#include <algorithm>
#include <functional>

#include "lcpat/constraint.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat {

void check_fragment(const FiniteFragment& frag) {
  if (frag.int_lo > frag.int_hi) throw Error("fragment integer range is empty");
  if (frag.max_height == 0) throw Error("fragment height bound must be at least 1");
}

GroundOracle::GroundOracle(const Signature& sig, FiniteFragment frag) : sig_(sig), frag_(frag) {
  check_fragment(frag_);
}

const std::vector<Term>& GroundOracle::ground(const Sort& sort, unsigned h) {
  auto key = std::make_pair(sort.name(), h);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::vector<Term> out;
  if (h >= 1) {
    if (sort == Sort::Int()) {
      for (auto v = frag_.int_lo; v <= frag_.int_hi; ++v) out.push_back(theory::num(v));
    } else if (sort == Sort::Bool()) {
      out = {theory::boolean(false), theory::boolean(true)};
    } else {
      for (const auto& c : sig_.constructors_of(sort)) {
        std::vector<std::vector<Term>> pools;
        for (const auto& s : c->arg_sorts) pools.push_back(ground(s, h - 1));
        std::vector<Term> args(pools.size(), Term::variable("_", Sort::Int()));
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == pools.size()) {
            out.push_back(Term::apply(c, args));
            return;
          }
          for (const auto& g : pools[i]) {
            args[i] = g;
            rec(i + 1);
          }
        };
        rec(0);
      }
    }
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

namespace {

bool in_fragment(const Term& t, const FiniteFragment& frag) {
  if (auto v = t.int_value()) return *v >= frag.int_lo && *v <= frag.int_hi;
  return std::all_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return in_fragment(a, frag); });
}

void depth_bounds(const Term& t, unsigned depth, unsigned h, std::map<Var, unsigned>& out) {
  if (t.is_var()) {
    unsigned b = depth <= h ? h - depth : 0;
    auto [it, fresh] = out.emplace(t.var(), b);
    if (!fresh) it->second = std::min(it->second, b);
    return;
  }
  for (const auto& a : t.args()) depth_bounds(a, depth + 1, h, out);
}

bool holds(const Term& phi) {
  try {
    return eval_constraint(phi);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

template <class F>
void GroundOracle::for_each_instance(const ConstrainedTerm& ct, F&& visit) {
  std::map<Var, unsigned> bounds;
  depth_bounds(ct.term, 0, frag_.max_height, bounds);
  std::vector<std::pair<Var, const std::vector<Term>*>> term_vars;
  for (const auto& [x, b] : bounds) term_vars.emplace_back(x, &ground(x.sort, b));
  std::vector<std::pair<Var, const std::vector<Term>*>> ex_vars;
  for (const auto& x : existential_vars(ct))
    ex_vars.emplace_back(x, &ground(x.sort, frag_.max_height));

  Substitution sigma;
  std::function<bool(std::size_t, const Term&)> exists = [&](std::size_t i, const Term& phi) {
    if (i == ex_vars.size()) return holds(phi);
    for (const auto& v : *ex_vars[i].second) {
      Substitution one;
      one.bind(ex_vars[i].first, v);
      if (exists(i + 1, apply(phi, one))) return true;
    }
    return false;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == term_vars.size()) {
      Term g = apply(ct.term, sigma);
      if (g.height() > frag_.max_height || !in_fragment(g, frag_)) return;
      if (exists(0, apply(ct.constraint, sigma))) visit(g);
      return;
    }
    for (const auto& v : *term_vars[i].second) {
      sigma.bind(term_vars[i].first, v);
      rec(i + 1);
    }
  };
  rec(0);
}

std::set<std::string> GroundOracle::ginst(const ConstrainedTerm& ct) {
  std::set<std::string> out;
  for_each_instance(ct, [&](const Term& g) { out.insert(canonical_key(g)); });
  return out;
}

std::set<std::string> GroundOracle::ginst(const ConstrainedSet& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) {
    auto part = ginst(c);
    out.insert(part.begin(), part.end());
  }
  return out;
}

std::vector<Term> GroundOracle::ginst_terms(const ConstrainedTerm& ct) {
  std::map<std::string, Term> out;
  for_each_instance(ct, [&](const Term& g) { out.emplace(canonical_key(g), g); });
  std::vector<Term> v;
  for (auto& [_, t] : out) v.push_back(t);
  return v;
}

std::vector<Term> enumerate_ground(const Sort& sort, const FiniteFragment& frag,
                                   const Signature& sig) {
  GroundOracle o(sig, frag);
  return o.ground(sort, frag.max_height);
}

std::vector<Term> ginst(const ConstrainedTerm& ct, const FiniteFragment& frag,
                        const Signature& sig) {
  GroundOracle o(sig, frag);
  return o.ginst_terms(ct);
}

bool check_diff_semantics(const ConstrainedSet& p, const ConstrainedSet& q,
                          const ConstrainedSet& d, const FiniteFragment& frag,
                          const Signature& sig) {
  GroundOracle o(sig, frag);
  auto gp = o.ginst(p);
  auto gq = o.ginst(q);
  std::set<std::string> expected;
  std::set_difference(gp.begin(), gp.end(), gq.begin(), gq.end(),
                      std::inserter(expected, expected.begin()));
  return o.ginst(d) == expected;
}

std::vector<Term> ground_patterns(const Signature& sig, const FiniteFragment& frag) {
  GroundOracle o(sig, frag);
  std::vector<Term> out;
  for (const auto& f : sig.defined_symbols()) {
    std::vector<Term> args;
    FreshVars fresh;
    for (const auto& s : f->arg_sorts) args.push_back(fresh.fresh_term(s, "g"));
    for (auto& g : o.ginst_terms({Term::apply(f, args), theory::top()})) out.push_back(g);
  }
  return out;
}

}  // namespace lcpat
