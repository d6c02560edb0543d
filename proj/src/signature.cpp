#include "lcpat/signature.hpp"

#include <algorithm>

#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat {

Signature::Signature() { sorts_ = {Sort::Int(), Sort::Bool()}; }

const Sort& Signature::declare_sort(const std::string& name) {
  if (find_sort(name)) throw DuplicateDeclaration("sort '" + name + "' is already declared");
  sorts_.emplace_back(name, SortKind::Term);
  return sorts_.back();
}

Symbol Signature::declare(const std::string& name, std::vector<Sort> args, Sort result,
                          SymbolKind kind) {
  if (by_name_.count(name) || theory::is_reserved_name(name)) {
    throw DuplicateDeclaration("symbol '" + name + "' is already declared");
  }
  for (const auto& s : args) {
    if (!find_sort(s.name())) throw UnknownSymbol("unknown sort '" + s.name() + "'");
  }
  if (!find_sort(result.name())) throw UnknownSymbol("unknown sort '" + result.name() + "'");
  // Normalize sort kinds to the declared ones.
  for (auto& s : args) s = *find_sort(s.name());
  result = *find_sort(result.name());
  auto f = std::make_shared<FunctionSymbol>();
  f->name = name;
  f->arg_sorts = std::move(args);
  f->result_sort = std::move(result);
  f->kind = kind;
  symbols_.push_back(f);
  by_name_[name] = f;
  return f;
}

std::optional<Sort> Signature::find_sort(const std::string& name) const {
  for (const auto& s : sorts_)
    if (s.name() == name) return s;
  return std::nullopt;
}

std::optional<Symbol> Signature::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<Symbol> Signature::constructors_of(const Sort& s) const {
  std::vector<Symbol> out;
  for (const auto& f : symbols_)
    if (f->kind == SymbolKind::Constructor && f->result_sort == s) out.push_back(f);
  return out;
}

std::vector<Symbol> Signature::defined_symbols() const {
  std::vector<Symbol> out;
  for (const auto& f : symbols_)
    if (f->kind == SymbolKind::Defined) out.push_back(f);
  return out;
}

bool is_constructor_term(const Term& t) {
  if (t.is_var()) return true;
  auto k = t.symbol().kind;
  if (k != SymbolKind::Constructor && k != SymbolKind::Value) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_constructor_term);
}

bool is_pattern(const Term& t) {
  if (t.is_var() || t.symbol().kind != SymbolKind::Defined) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_constructor_term);
}

ConstructorUniverse& ConstructorUniverse::with_finite_ints(std::vector<std::int64_t> values) {
  ints_ = std::move(values);
  return *this;
}

std::optional<std::vector<Symbol>> ConstructorUniverse::constructors(const Sort& s) const {
  if (s == Sort::Bool()) return std::vector<Symbol>{theory::bool_value(true), theory::bool_value(false)};
  if (s == Sort::Int()) {
    if (!ints_) return std::nullopt;
    std::vector<Symbol> out;
    for (auto v : *ints_) out.push_back(theory::int_value(v));
    return out;
  }
  return sig_->constructors_of(s);
}

}  // namespace lcpat
