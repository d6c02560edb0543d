#pragma once

#include <map>
#include <optional>
#include <string>

#include "lcpat/term.hpp"

namespace lcpat {

/// Finite sort-preserving map from variables to terms; identity bindings are never stored.
class Substitution {
 public:
  Substitution() = default;

  /// Throws SortMismatch when the sorts differ. Binding x to x removes x.
  void bind(const Var& x, const Term& t);
  std::optional<Term> lookup(const Var& x) const;
  bool contains(const Var& x) const { return map_.count(x) != 0; }

  const std::map<Var, Term>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  VarSet domain() const;
  Substitution restrict(const VarSet& xs) const;

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.map_ == b.map_;
  }

 private:
  std::map<Var, Term> map_;
};

Term apply(const Term& t, const Substitution& s);
/// The substitution that applies `first`, then `second`.
Substitution compose(const Substitution& first, const Substitution& second);

/// One-sided matching: σ with sσ = t, if any.
std::optional<Substitution> more_general(const Term& s, const Term& t);
/// `t` is an instance of `s` but not vice versa.
bool strictly_more_general(const Term& s, const Term& t);

/// Every x in X maps to a linear term and images of distinct members share no variable.
bool is_linearity_preserving(const Substitution& s, const VarSet& xs);

std::string to_string(const Substitution& s);

}  // namespace lcpat
