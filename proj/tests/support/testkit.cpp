#include "testkit.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lcpat/constraint.hpp"
#include "lcpat/theory.hpp"

namespace testkit {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    std::abort();
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) { return std::string(LCPAT_FIXTURES_DIR) + "/" + name; }

Sigma1::Sigma1() {
  Sort list = sig.declare_sort("list");
  nil = sig.declare("nil", {}, list);
  cons = sig.declare("cons", {Sort::Int(), list}, list);
  f = sig.declare("f", {list, Sort::Int()}, Sort::Int(), SymbolKind::Defined);
}

Lctrs load_fixture(const std::string& name) {
  auto res = parse_lctrs(slurp(fixture(name)));
  if (!res.lctrs) {
    for (const auto& d : res.diagnostics) std::cerr << name << ":" << to_string(d) << "\n";
    std::abort();
  }
  return std::move(*res.lctrs);
}

PropSig::PropSig() {
  Sort nat = sig.declare_sort("nat");
  Sort list = sig.declare_sort("list");
  z = sig.declare("z", {}, nat);
  s = sig.declare("s", {nat}, nat);
  nil = sig.declare("nil", {}, list);
  cons = sig.declare("cons", {Sort::Int(), list}, list);
  g = sig.declare("g", {list, nat, Sort::Int()}, Sort::Int(), SymbolKind::Defined);
  h = sig.declare("h", {nat, Sort::Int()}, Sort::Int(), SymbolKind::Defined);
}

Var Gen::fresh(const Sort& s) {
  Var v{prefix_ + std::to_string(++counter_), s};
  used_.push_back(v);
  return v;
}

Term Gen::term(const Sort& sort, unsigned depth, const GenOptions& o) {
  if (!o.linear && chance(0.3)) {
    std::vector<Var> same;
    for (const auto& v : used_)
      if (v.sort == sort) same.push_back(v);
    if (!same.empty()) return Term::variable(same[pick(0, static_cast<int>(same.size()) - 1)]);
  }
  if (sort == Sort::Int()) {
    if (o.values && chance(0.2)) return theory::num(pick(-1, 1));
    return Term::variable(fresh(sort));
  }
  if (depth == 0 || chance(0.4)) return Term::variable(fresh(sort));
  if (sort.name() == "nat") {
    if (chance(0.4)) return Term::apply(ps_.z);
    return Term::apply(ps_.s, {term(sort, depth - 1, o)});
  }
  if (chance(0.35)) return Term::apply(ps_.nil);
  Term head = term(Sort::Int(), depth - 1, o);
  return Term::apply(ps_.cons, {head, term(sort, depth - 1, o)});
}

Term Gen::atom(const std::vector<Var>& ints) {
  Term x = Term::variable(ints[pick(0, static_cast<int>(ints.size()) - 1)]);
  Term c = theory::num(pick(-2, 2));
  int kind = pick(0, 5);
  if (ints.size() > 1 && kind >= 4) {
    Term y = Term::variable(ints[pick(0, static_cast<int>(ints.size()) - 1)]);
    Term lhs = kind == 4 ? theory::mk_add(x, y) : theory::mk_sub(x, y);
    return chance(0.5) ? theory::mk_le(lhs, c) : theory::mk_gt(lhs, c);
  }
  switch (kind) {
    case 0: return theory::mk_le(x, c);
    case 1: return theory::mk_gt(x, c);
    case 2: return theory::mk_eq(x, c);
    default: return theory::mk_neq(x, c);
  }
}

Term Gen::constraint_over(const std::vector<Var>& ints) {
  if (ints.empty() || chance(0.3)) return theory::top();
  Term phi = atom(ints);
  int extra = pick(0, 2);
  for (int i = 0; i < extra; ++i) {
    Term a = atom(ints);
    switch (pick(0, 2)) {
      case 0: phi = theory::mk_and(phi, a); break;
      case 1: phi = theory::mk_or(phi, a); break;
      default: phi = theory::mk_and(phi, theory::mk_not(a)); break;
    }
  }
  if (chance(0.2)) phi = theory::mk_not(phi);
  return phi;
}

ConstrainedTerm Gen::pattern(const GenOptions& o, bool mixed) {
  used_.clear();
  Term t = [&] {
    if (mixed && chance(0.2)) {
      Term n = term(ps_.h->arg_sorts[0], o.max_depth, o);
      return Term::apply(ps_.h, {n, term(Sort::Int(), 0, o)});
    }
    Term l = term(ps_.g->arg_sorts[0], o.max_depth, o);
    Term n = term(ps_.g->arg_sorts[1], o.max_depth, o);
    return Term::apply(ps_.g, {l, n, term(Sort::Int(), 0, o)});
  }();
  std::vector<Var> ints;
  for (const auto& v : vars_in_order(t))
    if (v.sort == Sort::Int()) ints.push_back(v);
  return {t, o.constraint ? constraint_over(ints) : theory::top()};
}

std::set<std::string> keys(const std::vector<Term>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(canonical_key(t));
  return out;
}

}  // namespace testkit
