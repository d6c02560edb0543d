#include "lcpat/complement.hpp"

#include <algorithm>

#include "lcpat/errors.hpp"

namespace lcpat {

namespace {

void sort_canonically(std::vector<Term>& ts) {
  std::vector<std::pair<std::string, Term>> keyed;
  keyed.reserve(ts.size());
  for (auto& t : ts) keyed.emplace_back(canonical_key(t), t);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ts.clear();
  for (auto& [_, t] : keyed) ts.push_back(t);
}

std::vector<Term> fresh_args(const FunctionSymbol& f, FreshVars& fresh, std::size_t from = 0) {
  std::vector<Term> out;
  for (std::size_t i = from; i < f.arity(); ++i)
    out.push_back(fresh.fresh_term(f.arg_sorts[i], fresh_hint(f.arg_sorts[i])));
  return out;
}

std::vector<Term> cocterm_rec(const Term& u, const ConstructorUniverse& cu, FreshVars& fresh) {
  if (u.is_var()) return {};
  const auto& c = u.symbol();
  if (c.kind != SymbolKind::Constructor && c.kind != SymbolKind::Value) {
    throw NotConstructorTerm("'" + to_string(u) + "' is not a constructor term");
  }
  auto ctors = cu.constructors(u.sort());
  if (!ctors) {
    throw InfiniteComplement("the complement of '" + to_string(u) + "' in sort " +
                             u.sort().name() + " is infinite");
  }
  std::vector<Term> out;
  for (const auto& d : *ctors) {
    if (same_symbol(*d, c)) continue;
    out.push_back(Term::apply(d, fresh_args(*d, fresh)));
  }
  for (std::size_t i = 0; i < u.args().size(); ++i) {
    for (const auto& alt : cocterm_rec(u.args()[i], cu, fresh)) {
      std::vector<Term> args(u.args().begin(), u.args().begin() + static_cast<std::ptrdiff_t>(i));
      args.push_back(alt);
      for (auto& y : fresh_args(c, fresh, i + 1)) args.push_back(y);
      out.push_back(Term::apply(u.symbol_ptr(), std::move(args)));
    }
  }
  return out;
}

}  // namespace

std::string fresh_hint(const Sort& s) {
  if (s == Sort::Int()) return "x";
  if (s == Sort::Bool()) return "b";
  return "xs";
}

std::vector<Term> cocterm(const Term& u, const ConstructorUniverse& cu, FreshVars& fresh) {
  fresh.reserve(u);
  auto out = cocterm_rec(u, cu, fresh);
  sort_canonically(out);
  return out;
}

std::vector<Substitution> cosubst(const Substitution& sigma, const ConstructorUniverse& cu,
                                  FreshVars& fresh) {
  std::vector<std::pair<Var, std::vector<Term>>> choices;
  for (const auto& [x, img] : sigma.bindings()) {
    fresh.reserve(x);
    fresh.reserve(img);
  }
  for (const auto& [x, img] : sigma.bindings()) {
    std::vector<Term> opts{img};
    for (auto& alt : cocterm(img, cu, fresh)) opts.push_back(alt);
    choices.emplace_back(x, std::move(opts));
  }
  std::vector<Substitution> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    std::size_t k = choices.size();
    while (k > 0) {
      --k;
      if (++idx[k] < choices[k].second.size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (choices.empty()) return out;
    Substitution rho;
    for (std::size_t i = 0; i < choices.size(); ++i)
      rho.bind(choices[i].first, choices[i].second[idx[i]]);
    out.push_back(std::move(rho));
  }
}

std::vector<Term> copattern(const Term& s, const Substitution& sigma,
                            const ConstructorUniverse& cu, FreshVars& fresh) {
  fresh.reserve(s);
  Substitution restricted = sigma.restrict(vars(s));
  Term ssigma = apply(s, restricted);
  std::vector<Term> out;
  for (const auto& rho : cosubst(restricted, cu, fresh)) {
    Term inst = apply(s, rho);
    if (!(inst == ssigma)) out.push_back(inst);
  }
  sort_canonically(out);
  return out;
}

}  // namespace lcpat
