#pragma once

#include <map>
#include <vector>

#include "lcpat/term.hpp"

namespace lcpat {

/// Assignment of values to theory variables.
using Model = std::map<Var, Term>;

/// Interprets a ground theory term; returns the value term.
/// Throws NonGroundTerm, DivisionByZero, EvalError (overflow, negative exponent, non-theory symbol).
Term eval_ground(const Term& t);
/// eval_ground of a constraint, as a boolean.
bool eval_constraint(const Term& phi);

/// Applies a model, defaulting unassigned int variables to 0 and bool variables to false.
Term ground_with(const Term& t, const Model& m);

/// Flattens conjunctions and disjunctions, drops `true` conjuncts and `false` disjuncts,
/// collapses double negation. Purely cosmetic.
Term simplify_cosmetic(const Term& phi);

/// Conjuncts of a (nested) conjunction; `true` yields an empty list.
std::vector<Term> conjuncts(const Term& phi);
/// Left-nested conjunction; empty list yields `true`.
Term conjunction(const std::vector<Term>& parts);
Term disjunction(const std::vector<Term>& parts);

}  // namespace lcpat
