#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcpat/fresh.hpp"
#include "lcpat/solver.hpp"
#include "lcpat/substitution.hpp"
#include "lcpat/term.hpp"

namespace lcpat {

/// ⟨term | constraint⟩; the constraint is a bool-sorted theory term.
struct ConstrainedTerm {
  Term term;
  Term constraint;

  friend bool operator==(const ConstrainedTerm& a, const ConstrainedTerm& b) {
    return a.term == b.term && a.constraint == b.constraint;
  }
};

using ConstrainedSet = std::vector<ConstrainedTerm>;

/// Throws SortMismatch when the constraint is not bool-sorted or not a theory term.
ConstrainedTerm make_constrained(Term term, Term constraint);

VarSet vars(const ConstrainedTerm& ct);
/// Constraint variables that do not occur in the term (read existentially).
VarSet existential_vars(const ConstrainedTerm& ct);
bool is_value_free(const ConstrainedTerm& ct);
ConstrainedTerm apply(const ConstrainedTerm& ct, const Substitution& s);

/// Plain `term [constraint]` rendering, no renaming or simplification.
std::string to_string(const ConstrainedTerm& ct);
/// Renaming-invariant key: term and cosmetically simplified constraint, variables numbered
/// by first occurrence.
std::string canonical_key(const ConstrainedTerm& ct);

/// Display form: variables renamed to their base names (primes added on clashes) in order
/// of first occurrence, constraint cosmetically simplified. Names in `reserved` are avoided.
ConstrainedTerm normalized(const ConstrainedTerm& ct, const std::set<std::string>& reserved = {});

/// Replaces every value in the term by a fresh variable y and conjoins y = value.
ConstrainedTerm value_free(const ConstrainedTerm& ct, FreshVars& fresh);

/// Renames the variables of `ct` that occur in `avoid` to fresh ones, consistently in term
/// and constraint.
ConstrainedTerm rename_apart(const ConstrainedTerm& ct, const VarSet& avoid, FreshVars& fresh);

struct Unifier {
  Substitution mgu;
  Term constraint;  // φθ ∧ ψθ
};

enum class Tri { Yes, No, Unknown };

struct UnifiabilityCheck {
  Tri verdict = Tri::No;
  /// Present for Yes, and for Unknown when only satisfiability was undecided.
  std::optional<Unifier> unifier;
  std::string reason;
};

/// Unifiability of constrained terms with disjoint variables: the terms unify with mgu θ,
/// constraint variables map to values or variables, and φθ ∧ ψθ is satisfiable.
UnifiabilityCheck check_unifiable(const ConstrainedTerm& a, const ConstrainedTerm& b,
                                  Solver& solver);
/// As check_unifiable; throws InconclusiveError on an unknown satisfiability verdict.
std::optional<Unifier> constrained_unifiable(const ConstrainedTerm& a, const ConstrainedTerm& b,
                                             Solver& solver);

enum class EquivMode { Syntactic, Semantic };
enum class DotEq { Equal, NotEqual, Unknown };

std::string to_string(DotEq d);

/// Equality up to renaming (and, in semantic mode, constraint equivalence).
/// Syntactic mode compares flattened conjunct lists up to reordering; `solver` is only
/// needed in semantic mode.
DotEq dot_equal(const ConstrainedTerm& a, const ConstrainedTerm& b,
                EquivMode mode = EquivMode::Syntactic, Solver* solver = nullptr);

/// Union that drops members dot_equal to an earlier one (first representative wins).
ConstrainedSet dotted_union(const ConstrainedSet& p, const ConstrainedSet& q,
                            EquivMode mode = EquivMode::Syntactic, Solver* solver = nullptr);

}  // namespace lcpat
