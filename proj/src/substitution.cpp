#include "lcpat/substitution.hpp"

#include <functional>
#include <sstream>

#include "lcpat/errors.hpp"

namespace lcpat {

void Substitution::bind(const Var& x, const Term& t) {
  if (!(x.sort == t.sort())) {
    throw SortMismatch("cannot bind " + x.name + " : " + x.sort.name() + " to a term of sort " +
                       t.sort().name());
  }
  if (t.is_var() && t.var() == x) {
    map_.erase(x);
    return;
  }
  map_.insert_or_assign(x, t);
}

std::optional<Term> Substitution::lookup(const Var& x) const {
  auto it = map_.find(x);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

VarSet Substitution::domain() const {
  VarSet out;
  for (const auto& [x, _] : map_) out.insert(x);
  return out;
}

Substitution Substitution::restrict(const VarSet& xs) const {
  Substitution out;
  for (const auto& [x, t] : map_)
    if (xs.count(x)) out.map_.emplace(x, t);
  return out;
}

Term apply(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  if (t.is_var()) {
    auto b = s.lookup(t.var());
    return b ? *b : t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(apply(a, s));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  return Term::apply(t.symbol_ptr(), std::move(args));
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [x, t] : first.bindings()) out.bind(x, apply(t, second));
  for (const auto& [x, t] : second.bindings())
    if (!first.contains(x)) out.bind(x, t);
  return out;
}

std::optional<Substitution> more_general(const Term& s, const Term& t) {
  // Identity bindings are not stored, so track them explicitly for non-linear s.
  Substitution out;
  VarSet identity;
  std::function<bool(const Term&, const Term&)> rec = [&](const Term& a, const Term& b) -> bool {
    if (a.is_var()) {
      if (!(a.sort() == b.sort())) return false;
      if (identity.count(a.var())) return b.is_var() && b.var() == a.var();
      if (auto bound = out.lookup(a.var())) return *bound == b;
      if (b.is_var() && b.var() == a.var()) {
        identity.insert(a.var());
        return true;
      }
      out.bind(a.var(), b);
      return true;
    }
    if (b.is_var()) return false;
    if (!same_symbol(a.symbol(), b.symbol())) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      if (!rec(a.args()[i], b.args()[i])) return false;
    return true;
  };
  if (!rec(s, t)) return std::nullopt;
  return out;
}

bool strictly_more_general(const Term& s, const Term& t) {
  return more_general(s, t).has_value() && !more_general(t, s).has_value();
}

bool is_linearity_preserving(const Substitution& s, const VarSet& xs) {
  VarSet seen;
  for (const auto& x : xs) {
    Term img = apply(Term::variable(x), s);
    if (!is_linear(img)) return false;
    for (const auto& v : vars(img))
      if (!seen.insert(v).second) return false;
  }
  return true;
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [x, t] : s.bindings()) {
    if (!first) os << ", ";
    first = false;
    os << x.name << " -> " << to_string(t);
  }
  os << '}';
  return os.str();
}

}  // namespace lcpat
