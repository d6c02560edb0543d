#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lcpat/solver.hpp"
#include "lcpat/term.hpp"

namespace lcpat {

/// SMT-LIB2 rendering of a constraint body. Throws UnsupportedSymbol (e.g. exp).
std::string smtlib_term(const Term& phi);
/// Symbol spelling of a variable name (quoted with |..| when needed).
std::string smtlib_symbol(const std::string& name);

/// Full script: set-logic, declare-const per free variable, one assert, check-sat, get-model.
std::string to_smtlib(const Term& phi, const std::string& logic = "QF_LIA");

/// Parsed s-expression.
struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> list;
  bool is_atom() const { return !atom.empty(); }
};

/// Parses all s-expressions in `text`. Throws ProtocolError on malformed input.
std::vector<SExpr> parse_sexprs(const std::string& text);

/// Constraint from an SMT-LIB term, with variable sorts from `decls`.
/// Throws ProtocolError / UnknownSymbol.
Term from_smtlib(const SExpr& e, const std::map<std::string, Sort>& decls);

/// Reads `define-fun <name> () <Sort> <value>` entries; other entries are ignored.
Model parse_model(const std::string& text, const VarSet& expected);

/// SMT-LIB2 solver subprocess speaking over stdin/stdout.
class ExternalSolver {
 public:
  /// `command` is split on whitespace and run via execvp. The process starts lazily.
  ExternalSolver(std::string command, int timeout_ms);
  ~ExternalSolver();
  ExternalSolver(const ExternalSolver&) = delete;
  ExternalSolver& operator=(const ExternalSolver&) = delete;

  /// Throws SolverUnavailable when the process cannot be started, ProtocolError on
  /// unexpected output. A timeout yields Unknown("timeout") and restarts the process.
  SatResult check_sat(const Term& phi);
  /// Validity of (∃ex_phi. phi) <=> (∃ex_psi. psi) as a quantified LIA query.
  EquivVerdict check_equiv(const Term& phi, const Term& psi, const VarSet& ex_phi,
                           const VarSet& ex_psi);

  /// Sends raw commands followed by an end marker; returns the output lines before it.
  /// Nullopt on timeout.
  std::optional<std::vector<std::string>> round_trip(const std::string& commands);

 private:
  void start();
  void stop();

  std::string command_;
  int timeout_ms_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace lcpat
