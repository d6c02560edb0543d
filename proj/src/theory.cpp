#include "lcpat/theory.hpp"

#include <array>
#include <string>

#include "lcpat/errors.hpp"

namespace lcpat::theory {

namespace {

Symbol make_calc(std::string name, std::vector<Sort> args, Sort result) {
  auto f = std::make_shared<FunctionSymbol>();
  f->name = std::move(name);
  f->arg_sorts = std::move(args);
  f->result_sort = std::move(result);
  f->kind = SymbolKind::Calculation;
  return f;
}

const Sort& I() { return Sort::Int(); }
const Sort& B() { return Sort::Bool(); }

}  // namespace

Symbol int_value(std::int64_t n) {
  auto f = std::make_shared<FunctionSymbol>();
  f->name = std::to_string(n);
  f->result_sort = I();
  f->kind = SymbolKind::Value;
  f->value = n;
  return f;
}

Symbol bool_value(bool b) {
  static const Symbol t = [] {
    auto f = std::make_shared<FunctionSymbol>();
    f->name = "true";
    f->result_sort = Sort::Bool();
    f->kind = SymbolKind::Value;
    f->value = 1;
    return Symbol(f);
  }();
  static const Symbol ff = [] {
    auto f = std::make_shared<FunctionSymbol>();
    f->name = "false";
    f->result_sort = Sort::Bool();
    f->kind = SymbolKind::Value;
    f->value = 0;
    return Symbol(f);
  }();
  return b ? t : ff;
}

#define LCPAT_CALC(fn, name, args, res)            \
  const Symbol& fn() {                             \
    static const Symbol s = make_calc(name, args, res); \
    return s;                                      \
  }

LCPAT_CALC(conj, "/\\", (std::vector<Sort>{B(), B()}), B())
LCPAT_CALC(disj, "\\/", (std::vector<Sort>{B(), B()}), B())
LCPAT_CALC(neg, "not", (std::vector<Sort>{B()}), B())
LCPAT_CALC(implies, "=>", (std::vector<Sort>{B(), B()}), B())
LCPAT_CALC(iff, "<=>", (std::vector<Sort>{B(), B()}), B())
LCPAT_CALC(plus, "+", (std::vector<Sort>{I(), I()}), I())
LCPAT_CALC(minus, "-", (std::vector<Sort>{I(), I()}), I())
LCPAT_CALC(times, "*", (std::vector<Sort>{I(), I()}), I())
LCPAT_CALC(div, "div", (std::vector<Sort>{I(), I()}), I())
LCPAT_CALC(mod, "mod", (std::vector<Sort>{I(), I()}), I())
LCPAT_CALC(exp, "exp", (std::vector<Sort>{I(), I()}), I())
LCPAT_CALC(ge, ">=", (std::vector<Sort>{I(), I()}), B())
LCPAT_CALC(gt, ">", (std::vector<Sort>{I(), I()}), B())
LCPAT_CALC(le, "<=", (std::vector<Sort>{I(), I()}), B())
LCPAT_CALC(lt, "<", (std::vector<Sort>{I(), I()}), B())

#undef LCPAT_CALC

Symbol eq(const Sort& s) {
  static const Symbol ei = make_calc("=", {I(), I()}, B());
  static const Symbol eb = make_calc("=", {B(), B()}, B());
  if (s == I()) return ei;
  if (s == B()) return eb;
  throw SortMismatch("equality is only available on theory sorts, not " + s.name());
}

Symbol neq(const Sort& s) {
  static const Symbol ni = make_calc("!=", {I(), I()}, B());
  static const Symbol nb = make_calc("!=", {B(), B()}, B());
  if (s == I()) return ni;
  if (s == B()) return nb;
  throw SortMismatch("disequality is only available on theory sorts, not " + s.name());
}

std::optional<Symbol> lookup(std::string_view name, std::size_t arity,
                             const std::optional<Sort>& operand) {
  if (arity == 1) {
    if (name == "not") return neg();
    return std::nullopt;
  }
  if (arity != 2) return std::nullopt;
  if (name == "=" || name == "!=") {
    if (!operand || !operand->is_theory()) return std::nullopt;
    return name == "=" ? eq(*operand) : neq(*operand);
  }
  static const std::array<const Symbol& (*)(), 15> all = {
      conj, disj, implies, iff, plus, minus, times, div, mod, exp, ge, gt, le, lt, neg};
  for (auto fn : all) {
    const Symbol& s = fn();
    if (s->name == name && s->arity() == 2) return s;
  }
  return std::nullopt;
}

bool is_reserved_name(std::string_view name) {
  static const std::array<std::string_view, 6> words = {"true", "false", "not",
                                                        "div",  "mod",   "exp"};
  for (auto w : words)
    if (w == name) return true;
  return false;
}

Term num(std::int64_t n) { return Term::apply(int_value(n)); }
Term boolean(bool b) { return Term::apply(bool_value(b)); }

Term mk_and(const Term& a, const Term& b) { return Term::apply(conj(), {a, b}); }
Term mk_or(const Term& a, const Term& b) { return Term::apply(disj(), {a, b}); }
Term mk_not(const Term& a) { return Term::apply(neg(), {a}); }
Term mk_implies(const Term& a, const Term& b) { return Term::apply(implies(), {a, b}); }
Term mk_iff(const Term& a, const Term& b) { return Term::apply(iff(), {a, b}); }
Term mk_eq(const Term& a, const Term& b) { return Term::apply(eq(a.sort()), {a, b}); }
Term mk_neq(const Term& a, const Term& b) { return Term::apply(neq(a.sort()), {a, b}); }
Term mk_le(const Term& a, const Term& b) { return Term::apply(le(), {a, b}); }
Term mk_lt(const Term& a, const Term& b) { return Term::apply(lt(), {a, b}); }
Term mk_ge(const Term& a, const Term& b) { return Term::apply(ge(), {a, b}); }
Term mk_gt(const Term& a, const Term& b) { return Term::apply(gt(), {a, b}); }
Term mk_add(const Term& a, const Term& b) { return Term::apply(plus(), {a, b}); }
Term mk_sub(const Term& a, const Term& b) { return Term::apply(minus(), {a, b}); }
Term mk_mul(const Term& a, const Term& b) { return Term::apply(times(), {a, b}); }

bool is_symbol(const Term& t, const Symbol& s) {
  return t.is_app() && same_symbol(t.symbol(), *s) && t.symbol().kind == s->kind;
}

bool is_true(const Term& t) {
  auto b = t.bool_value();
  return b && *b;
}

bool is_false(const Term& t) {
  auto b = t.bool_value();
  return b && !*b;
}

}  // namespace lcpat::theory
