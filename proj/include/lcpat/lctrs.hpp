#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcpat/diagnostics.hpp"
#include "lcpat/signature.hpp"
#include "lcpat/term.hpp"

namespace lcpat {

/// Constrained rewrite rule lhs -> rhs [guard].
struct Rule {
  Term lhs;
  Term rhs;
  Term guard;
  std::optional<SourceSpan> span;
};

/// Throws SortMismatch when lhs and rhs differ in sort or the guard is not a bool theory
/// term, and Error when the lhs is a variable or a theory term.
Rule make_rule(Term lhs, Term rhs, Term guard);

/// Var(guard) ∪ (Var(rhs) \ Var(lhs)).
VarSet logical_vars(const Rule& r);

std::string to_string(const Rule& r);

struct Lctrs {
  Signature signature;
  std::vector<Rule> rules;
};

/// Checks the hypotheses of the quasi-reducibility decision procedure. Errors:
/// non-left-linear rules, constructors of a theory sort. Warnings: non-pattern lhs.
std::vector<Diagnostic> validate(const Lctrs& r);

bool has_errors(const std::vector<Diagnostic>& ds);

}  // namespace lcpat
