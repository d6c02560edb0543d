#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lcpat/substitution.hpp"
#include "lcpat/term.hpp"

namespace lcpat {

/// Oriented equation `lhs =? rhs`; sides are never swapped.
struct Equation {
  Term lhs;
  Term rhs;
};

struct UnificationProblem {
  std::vector<Equation> equations;
};

/// Rule application counters, for instrumentation.
struct UnifyStats {
  std::size_t deletes = 0;
  std::size_t decomposes = 0;
  std::size_t eliminate_l = 0;
  std::size_t eliminate_r = 0;
};

/// Extended solved form: `x =? t` and `t =? x` (t not a variable), all solved
/// variables distinct and absent from every right side.
bool is_solved(const UnificationProblem& p);

/// Applies Delete, Decompose, EliminateL, EliminateR (first applicable rule, leftmost
/// equation) until the problem is solved or stuck. Absent on clash or occurs-check failure.
std::optional<UnificationProblem> solved_form(UnificationProblem p, UnifyStats* stats = nullptr);

/// The substitution read off a problem in solved form.
Substitution solved_substitution(const UnificationProblem& p);

/// Idempotent mgu of `s =? t`. Throws SortMismatch when the sorts differ.
std::optional<Substitution> unify(const Term& s, const Term& t, UnifyStats* stats = nullptr);

}  // namespace lcpat
