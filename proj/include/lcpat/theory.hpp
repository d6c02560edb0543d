#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "lcpat/term.hpp"

/// The fixed theory signature: core booleans plus integer arithmetic.
namespace lcpat::theory {

Symbol int_value(std::int64_t n);
Symbol bool_value(bool b);

const Symbol& conj();     // /\  (bool x bool -> bool)
const Symbol& disj();     // \/
const Symbol& neg();      // not
const Symbol& implies();  // =>
const Symbol& iff();      // <=>
Symbol eq(const Sort& s);   // =  (s x s -> bool), s a theory sort
Symbol neq(const Sort& s);  // !=
const Symbol& plus();
const Symbol& minus();
const Symbol& times();
const Symbol& div();
const Symbol& mod();
const Symbol& exp();
const Symbol& ge();
const Symbol& gt();
const Symbol& le();
const Symbol& lt();

/// Resolves a calculation symbol by surface name and arity; `=`/`!=` need `operand`.
std::optional<Symbol> lookup(std::string_view name, std::size_t arity,
                             const std::optional<Sort>& operand = std::nullopt);

bool is_reserved_name(std::string_view name);

// Term builders.
Term num(std::int64_t n);
Term boolean(bool b);
inline Term top() { return boolean(true); }
inline Term bottom() { return boolean(false); }
Term mk_and(const Term& a, const Term& b);
Term mk_or(const Term& a, const Term& b);
Term mk_not(const Term& a);
Term mk_implies(const Term& a, const Term& b);
Term mk_iff(const Term& a, const Term& b);
Term mk_eq(const Term& a, const Term& b);
Term mk_neq(const Term& a, const Term& b);
Term mk_le(const Term& a, const Term& b);
Term mk_lt(const Term& a, const Term& b);
Term mk_ge(const Term& a, const Term& b);
Term mk_gt(const Term& a, const Term& b);
Term mk_add(const Term& a, const Term& b);
Term mk_sub(const Term& a, const Term& b);
Term mk_mul(const Term& a, const Term& b);

bool is_symbol(const Term& t, const Symbol& s);
bool is_true(const Term& t);
bool is_false(const Term& t);

}  // namespace lcpat::theory
