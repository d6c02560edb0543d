#pragma once

#include <string>
#include <vector>

#include "lcpat/difference.hpp"
#include "lcpat/lctrs.hpp"

namespace lcpat {

/// Copat_f(Q) = {⟨f(x1..xn) | true⟩} ⊖ Q.
DiffOutcome copat_f(const ConstrainedSet& q, const Symbol& f, DiffContext& ctx);

/// Dotted union of copat_f over the defined symbols of the term signature.
DiffOutcome copat(const ConstrainedSet& q, const Signature& sig, DiffContext& ctx);

/// {value_free(⟨l | φ⟩) | l -> r [φ] ∈ R, l a pattern}.
ConstrainedSet lhs_patterns(const Lctrs& r, FreshVars& fresh);

enum class QrKind { QuasiReducible, NotQuasiReducible, Unknown };

struct QrVerdict {
  QrKind kind = QrKind::Unknown;
  /// Ground patterns outside every rule; normalized for display.
  ConstrainedSet witnesses;
  std::string reason;  // for Unknown
  std::vector<Diagnostic> diagnostics;
};

std::string to_string(QrKind k);

struct QrOptions {
  EquivMode mode = EquivMode::Syntactic;
  std::size_t max_steps = 100000;
};

/// Decides quasi-reducibility of a left-linear LCTRS. Throws ValidationFailed when
/// validate reports errors.
QrVerdict quasi_reducible(const Lctrs& r, Solver& solver, const QrOptions& opts = {});

}  // namespace lcpat
