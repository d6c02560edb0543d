#pragma once

#include <vector>

#include "lcpat/fresh.hpp"
#include "lcpat/signature.hpp"
#include "lcpat/substitution.hpp"

namespace lcpat {

/// Complement of a linear constructor term: non-overlapping linear constructor terms
/// covering every ground constructor term of u's sort that is not an instance of u.
/// Throws InfiniteComplement when a non-variable subterm has an infinite constructor set,
/// NotConstructorTerm when u contains a defined or calculation symbol.
std::vector<Term> cocterm(const Term& u, const ConstructorUniverse& cu, FreshVars& fresh);

/// Every ρ ≠ σ with Dom(ρ) = Dom(σ) and xρ ∈ cocterm(xσ) ∪ {xσ}.
std::vector<Substitution> cosubst(const Substitution& sigma, const ConstructorUniverse& cu,
                                  FreshVars& fresh);

/// {sρ | ρ ∈ cosubst(σ restricted to Var(s)), sρ ≠ sσ}.
std::vector<Term> copattern(const Term& s, const Substitution& sigma,
                            const ConstructorUniverse& cu, FreshVars& fresh);

/// Hint used for fresh variables of a sort.
std::string fresh_hint(const Sort& s);

}  // namespace lcpat
