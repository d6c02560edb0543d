#include "lcpat/quasi_reducibility.hpp"

#include "lcpat/complement.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat {

std::string to_string(QrKind k) {
  switch (k) {
    case QrKind::QuasiReducible: return "quasi-reducible";
    case QrKind::NotQuasiReducible: return "not-quasi-reducible";
    case QrKind::Unknown: return "unknown";
  }
  return "unknown";
}

DiffOutcome copat_f(const ConstrainedSet& q, const Symbol& f, DiffContext& ctx) {
  for (const auto& c : q) ctx.fresh.reserve(vars(c));
  std::vector<Term> args;
  for (const auto& s : f->arg_sorts) args.push_back(ctx.fresh.fresh_term(s, fresh_hint(s)));
  ConstrainedSet p{{Term::apply(f, std::move(args)), theory::top()}};
  return diff_sets(p, q, ctx);
}

DiffOutcome copat(const ConstrainedSet& q, const Signature& sig, DiffContext& ctx) {
  DiffOutcome out;
  for (const auto& f : sig.defined_symbols()) {
    DiffOutcome part = copat_f(q, f, ctx);
    if (!part.exact()) out.mark_inconclusive(part.reason);
    out.result = dotted_union(out.result, part.result, ctx.mode, &ctx.solver);
  }
  return out;
}

ConstrainedSet lhs_patterns(const Lctrs& r, FreshVars& fresh) {
  ConstrainedSet q;
  for (const auto& rule : r.rules) {
    fresh.reserve(rule.lhs);
    fresh.reserve(rule.guard);
  }
  for (const auto& rule : r.rules)
    if (is_pattern(rule.lhs)) q.push_back(value_free({rule.lhs, rule.guard}, fresh));
  return q;
}

QrVerdict quasi_reducible(const Lctrs& r, Solver& solver, const QrOptions& opts) {
  QrVerdict out;
  out.diagnostics = validate(r);
  if (has_errors(out.diagnostics)) {
    std::string msg = "system violates the hypotheses of the decision procedure";
    for (const auto& d : out.diagnostics)
      if (d.severity == Severity::Error) msg += "\n  " + to_string(d);
    throw ValidationFailed(msg);
  }
  bool excluded = false;
  for (const auto& rule : r.rules)
    if (!is_pattern(rule.lhs)) excluded = true;

  FreshVars fresh;
  ConstrainedSet q = lhs_patterns(r, fresh);
  ConstructorUniverse cu(r.signature);
  DiffContext ctx{cu, solver, fresh, opts.mode, opts.max_steps, nullptr};
  DiffOutcome res = copat(q, r.signature, ctx);

  for (const auto& w : res.result) out.witnesses.push_back(normalized(w));
  if (!res.exact()) {
    out.kind = QrKind::Unknown;
    out.reason = res.reason;
  } else if (res.result.empty()) {
    out.kind = QrKind::QuasiReducible;
  } else if (excluded) {
    out.kind = QrKind::Unknown;
    out.reason = "rules with non-pattern left-hand sides were excluded";
  } else {
    out.kind = QrKind::NotQuasiReducible;
  }
  return out;
}

}  // namespace lcpat
