#pragma once

#include <optional>

#include "lcpat/lctrs.hpp"

namespace lcpat {

/// Root-redex test for a ground term against R and the calculation rules.
/// Guard variables outside the lhs are solved for with the builtin procedure;
/// throws InconclusiveError when that is undecided.
bool is_redex(const Term& t, const Lctrs& r);

/// One leftmost-innermost rewrite step; absent for normal forms.
std::optional<Term> rewrite_step(const Term& t, const Lctrs& r);

/// Rewrites until a normal form or `max_steps` steps have been taken.
Term normalize(const Term& t, const Lctrs& r, std::size_t max_steps = 10000);

}  // namespace lcpat
