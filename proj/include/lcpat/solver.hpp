#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lcpat/constraint.hpp"
#include "lcpat/term.hpp"

namespace lcpat {

enum class SatVerdict { Sat, Unsat, Unknown };

struct SatResult {
  SatVerdict verdict = SatVerdict::Unknown;
  Model model;         // only for Sat
  std::string reason;  // only for Unknown

  static SatResult sat(Model m) { return {SatVerdict::Sat, std::move(m), {}}; }
  static SatResult unsat() { return {SatVerdict::Unsat, {}, {}}; }
  static SatResult unknown(std::string why) { return {SatVerdict::Unknown, {}, std::move(why)}; }

  bool is_sat() const { return verdict == SatVerdict::Sat; }
  bool is_unsat() const { return verdict == SatVerdict::Unsat; }
  bool is_unknown() const { return verdict == SatVerdict::Unknown; }
};

std::string to_string(SatVerdict v);

enum class EquivVerdict { Equiv, NotEquiv, Unknown };

/// Process-wide counters; every Sat verdict is re-validated with eval_ground.
struct SolverStats {
  std::atomic<unsigned long> sat{0};
  std::atomic<unsigned long> unsat{0};
  std::atomic<unsigned long> unknown{0};
  std::atomic<unsigned long> models_validated{0};
  std::atomic<unsigned long> validation_failures{0};
  std::atomic<unsigned long> external_queries{0};
};

SolverStats& solver_stats();

/// Decision procedure for the linear fragment: NNF, lazy case split into conjunctions of
/// literals, Fourier-Motzkin elimination with integer tightening, model by back-substitution.
/// Sat answers carry a validated model; Unsat answers are sound; anything else is Unknown.
SatResult builtin_sat(const Term& phi);

/// Validity of (∃ex_phi. phi) <=> (∃ex_psi. psi) via exact quantifier elimination of
/// unit-coefficient variables; Unknown when elimination is not exact.
EquivVerdict builtin_equiv(const Term& phi, const Term& psi, const VarSet& ex_phi,
                           const VarSet& ex_psi);

/// Quantifier-free equivalent of (∃ex. phi) by exact elimination; nullopt when some step
/// is not integer-exact or an eliminated variable occurs in a non-linear literal.
std::optional<Term> project_exists(const Term& phi, const VarSet& ex);

enum class Backend { Builtin, External };

struct SolverConfig {
  /// Backends tried in order; later ones only on Unknown.
  std::vector<Backend> order{Backend::Builtin};
  /// Command line of an SMT-LIB2 solver reading from stdin (e.g. "z3 -in").
  std::string external_cmd;
  int timeout_ms = 5000;
};

class ExternalSolver;

/// Front end combining the builtin procedure with an optional external solver.
/// Not shareable across threads (owns a solver process).
class Solver {
 public:
  explicit Solver(SolverConfig cfg = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  SatResult check_sat(const Term& phi);
  EquivVerdict check_equiv(const Term& phi, const Term& psi, const VarSet& ex_phi,
                           const VarSet& ex_psi);

  const SolverConfig& config() const { return cfg_; }
  bool has_external() const { return !cfg_.external_cmd.empty(); }

 private:
  ExternalSolver& external();

  SolverConfig cfg_;
  std::unique_ptr<ExternalSolver> ext_;
};

}  // namespace lcpat
