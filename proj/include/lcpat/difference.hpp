#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lcpat/constrained.hpp"
#include "lcpat/fresh.hpp"
#include "lcpat/signature.hpp"
#include "lcpat/solver.hpp"

namespace lcpat {

enum class DiffStatus { Exact, Inconclusive };

struct DiffOutcome {
  ConstrainedSet result;
  DiffStatus status = DiffStatus::Exact;
  std::string reason;  // set when Inconclusive

  bool exact() const { return status == DiffStatus::Exact; }
  void mark_inconclusive(const std::string& why) {
    if (status == DiffStatus::Exact) reason = why;
    status = DiffStatus::Inconclusive;
  }
};

/// One state (P, Q) of the set difference, recorded before each step.
struct DiffStep {
  ConstrainedSet p;
  ConstrainedSet q;
};

/// Shared state of one top-level difference computation.
struct DiffContext {
  const ConstructorUniverse& universe;
  Solver& solver;
  FreshVars& fresh;
  EquivMode mode = EquivMode::Syntactic;
  std::size_t max_steps = 100000;
  /// When set, diff_sets appends every intermediate (P, Q).
  std::vector<DiffStep>* trace = nullptr;
};

/// s ⊖ t over unconstrained patterns: copattern(s, σ) for σ = mgu(s, t'), else {s}.
/// t is renamed apart from s first. Throws InfiniteComplement when s holds a value.
std::vector<Term> diff_unconstrained(const Term& s, const Term& t, const ConstructorUniverse& cu,
                                     FreshVars& fresh);

/// ⟨s|φ⟩ ⊖ ⟨t|ψ⟩. The divisor is renamed apart and made value-free.
/// Throws DividendNotValueFree, DivisorNotLinear.
DiffOutcome diff(const ConstrainedTerm& dividend, const ConstrainedTerm& divisor,
                 DiffContext& ctx);

/// P ⊖ Q over finite sets of value-free constrained linear patterns.
DiffOutcome diff_sets(const ConstrainedSet& p, const ConstrainedSet& q, DiffContext& ctx);

/// ⟨s|φ⟩ ⊖ ⟨t|ψ⟩ differs from {⟨s|φ⟩}, i.e. the two are constrained-unifiable.
/// An unknown verdict counts as effective.
bool is_effective(const ConstrainedTerm& s, const ConstrainedTerm& t, DiffContext& ctx);

using Weight = std::vector<std::pair<Term, std::size_t>>;

/// w(P, Q) = {(s, n) | ⟨s|φ⟩ ∈ P, n = number of effective divisors in Q}.
Weight diff_weight(const ConstrainedSet& p, const ConstrainedSet& q, DiffContext& ctx);

/// Strict multiset extension of the lexicographic order on (term, count): (s, n) ≻ (t, m)
/// iff t is a strict instance of s, or s and t are renamings of each other and n > m.
bool weight_greater(const Weight& m, const Weight& n);

std::string to_string(DiffStatus s);

}  // namespace lcpat
