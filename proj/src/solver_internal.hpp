#pragma once

#include "lcpat/solver.hpp"

namespace lcpat::detail {

/// Completes `m` over Var(phi), re-evaluates phi, and records the verdict in solver_stats().
SatResult validated(const Term& phi, Model m);
/// Records an Unsat/Unknown verdict in solver_stats().
SatResult record(SatResult r);

}  // namespace lcpat::detail
