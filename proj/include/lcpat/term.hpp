#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace lcpat {

enum class SortKind { Theory, Term };

/// A sort is identified by its name; names are unique within a signature.
class Sort {
 public:
  Sort() = default;
  Sort(std::string name, SortKind kind) : name_(std::move(name)), kind_(kind) {}

  static const Sort& Int();
  static const Sort& Bool();

  const std::string& name() const { return name_; }
  SortKind kind() const { return kind_; }
  bool is_theory() const { return kind_ == SortKind::Theory; }

  friend bool operator==(const Sort& a, const Sort& b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(const Sort& a, const Sort& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
  SortKind kind_ = SortKind::Term;
};

enum class SymbolKind { Value, Calculation, Constructor, Defined };

struct FunctionSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;
  SymbolKind kind = SymbolKind::Constructor;
  // Numeric payload of value symbols (0/1 for booleans).
  std::int64_t value = 0;

  std::size_t arity() const { return arg_sorts.size(); }
  bool is_value() const { return kind == SymbolKind::Value; }
  bool is_calculation() const { return kind == SymbolKind::Calculation; }
  bool is_theory() const { return is_value() || is_calculation(); }
};

using Symbol = std::shared_ptr<const FunctionSymbol>;

/// Symbols are equal when name and argument sorts agree (`=` is overloaded per sort).
bool same_symbol(const FunctionSymbol& a, const FunctionSymbol& b);

struct Var {
  std::string name;
  Sort sort;

  friend bool operator==(const Var& a, const Var& b) {
    return a.name == b.name && a.sort == b.sort;
  }
  friend std::strong_ordering operator<=>(const Var& a, const Var& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.sort <=> b.sort;
  }
};

using VarSet = std::set<Var>;

/// Immutable, structurally compared first-order term.
class Term {
 public:
  static Term variable(Var v);
  static Term variable(std::string name, Sort sort) {
    return variable(Var{std::move(name), std::move(sort)});
  }
  /// Throws SortMismatch on arity or argument-sort errors.
  static Term apply(Symbol f, std::vector<Term> args = {});

  bool is_var() const;
  bool is_app() const { return !is_var(); }
  const Var& var() const;
  const FunctionSymbol& symbol() const;
  const Symbol& symbol_ptr() const;
  std::span<const Term> args() const;
  const Sort& sort() const;

  std::size_t hash() const;
  unsigned height() const;

  bool is_value() const { return is_app() && symbol().is_value(); }
  std::optional<std::int64_t> int_value() const;
  std::optional<bool> bool_value() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// 1-based argument path from the root; empty is the root position.
struct Position {
  std::vector<std::size_t> path;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

std::string to_string(const Position& p);

unsigned height(const Term& t);
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);
std::vector<Position> positions(const Term& t);

VarSet vars(const Term& t);
void collect_vars(const Term& t, VarSet& out);
/// Variables in order of first occurrence (left to right, depth first).
std::vector<Var> vars_in_order(const Term& t);
bool occurs(const Var& x, const Term& t);
bool is_ground(const Term& t);

bool is_linear(const Term& t);
bool is_linear_wrt(const Term& t, const VarSet& xs);

/// No symbol other than values, calculation symbols and variables.
bool is_theory_term(const Term& t);
/// True when `t` contains no value symbol.
bool is_value_free(const Term& t);

/// Surface syntax: infix theory operators, `f(a, b)` applications.
std::string to_string(const Term& t);

/// Serialization invariant under variable renaming (variables numbered by first occurrence).
std::string canonical_key(const Term& t);

}  // namespace lcpat
