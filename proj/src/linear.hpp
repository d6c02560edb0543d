#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lcpat/constraint.hpp"
#include "lcpat/term.hpp"

namespace lcpat::detail {

using Coeffs = std::map<Var, std::int64_t>;

struct LinExpr {
  Coeffs a;
  std::int64_t c = 0;
};

/// Linear form of an integer term; nullopt for non-linear terms, evaluation errors or overflow.
std::optional<LinExpr> linearize(const Term& t);

/// sum(a[x] * x) <= b
struct Ineq {
  Coeffs a;
  std::int64_t b = 0;
};

/// `lhs - rhs + shift <= 0` as an inequality; nullopt on overflow.
std::optional<Ineq> make_ineq(const LinExpr& lhs, const LinExpr& rhs, std::int64_t shift);

Term ineq_to_term(const Ineq& q);

enum class FmStatus { Feasible, Infeasible, TooLarge };

struct Projection {
  FmStatus status = FmStatus::Feasible;
  /// All eliminations were integer-exact (each pair had a unit coefficient).
  bool exact = true;
  std::vector<Var> order;
  /// stages[k] is the system just before eliminating order[k].
  std::vector<std::vector<Ineq>> stages;
  std::vector<Ineq> residue;
};

/// Fourier-Motzkin elimination of `targets` (the others are kept in the residue).
Projection eliminate(std::vector<Ineq> system, const VarSet& targets);

enum class SearchStatus { Found, Exhausted, GaveUp };

/// Integer point of the original system by back-substitution over `p` (all vars eliminated).
SearchStatus find_model(const Projection& p, Model& out);

/// Conjunction of literals reached by one branch of the case split.
struct Leaf {
  std::vector<Ineq> ineqs;
  std::map<Var, bool> bools;
  std::vector<Term> opaque;
};

/// Enumerates the conjunctive branches of the negation normal form of `phi`.
/// `visit` returns false to stop. Returns false when the branch budget ran out.
bool for_each_branch(const Term& phi, const std::function<bool(Leaf&)>& visit,
                     std::size_t budget = 20000);

}  // namespace lcpat::detail
