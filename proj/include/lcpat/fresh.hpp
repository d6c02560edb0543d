#pragma once

#include <set>
#include <string>

#include "lcpat/term.hpp"

namespace lcpat {

/// Source of fresh variable names for one top-level computation.
class FreshVars {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const Var& v) { used_.insert(v.name); }
  void reserve(const Term& t);
  void reserve(const VarSet& xs);

  /// A variable named `<hint>_<n>` never issued or reserved before.
  Var fresh(const Sort& sort, const std::string& hint);
  Term fresh_term(const Sort& sort, const std::string& hint) {
    return Term::variable(fresh(sort, hint));
  }

 private:
  std::set<std::string> used_;
  unsigned long counter_ = 0;
};

/// Drops a trailing `_<digits>` suffix added by FreshVars.
std::string base_name(const std::string& name);

}  // namespace lcpat
