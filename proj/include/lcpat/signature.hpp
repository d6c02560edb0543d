#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcpat/term.hpp"

namespace lcpat {

/// User sorts and symbols on top of the fixed theory signature (int, bool, core operators).
class Signature {
 public:
  Signature();

  /// Declares a term sort. Throws DuplicateDeclaration (also for int/bool).
  const Sort& declare_sort(const std::string& name);
  /// Declares a user symbol. Throws DuplicateDeclaration, UnknownSymbol (unknown sort).
  Symbol declare(const std::string& name, std::vector<Sort> args, Sort result,
                 SymbolKind kind = SymbolKind::Constructor);

  std::optional<Sort> find_sort(const std::string& name) const;
  std::optional<Symbol> find(const std::string& name) const;

  const std::vector<Sort>& sorts() const { return sorts_; }
  const std::vector<Symbol>& user_symbols() const { return symbols_; }
  std::vector<Symbol> constructors_of(const Sort& s) const;
  std::vector<Symbol> defined_symbols() const;

 private:
  std::vector<Sort> sorts_;
  std::vector<Symbol> symbols_;
  std::map<std::string, Symbol> by_name_;
};

/// Constructor terms: variables, values and constructor applications only.
bool is_constructor_term(const Term& t);
/// f(t1..tn) with f defined and every ti a constructor term.
bool is_pattern(const Term& t);

/// Per-sort constructor sets used by the complement constructions.
class ConstructorUniverse {
 public:
  explicit ConstructorUniverse(const Signature& sig) : sig_(&sig) {}

  /// Pretend `int` has exactly these values (used to reproduce finite examples).
  ConstructorUniverse& with_finite_ints(std::vector<std::int64_t> values);

  /// Constructors of sort `s`, or nullopt when the set is infinite.
  std::optional<std::vector<Symbol>> constructors(const Sort& s) const;

 private:
  const Signature* sig_;
  std::optional<std::vector<std::int64_t>> ints_;
};

}  // namespace lcpat
