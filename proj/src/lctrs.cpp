#include "lcpat/lctrs.hpp"

#include "lcpat/errors.hpp"

namespace lcpat {

std::string to_string(const Diagnostic& d) {
  std::string out;
  if (d.span) out += std::to_string(d.span->line) + ":" + std::to_string(d.span->column) + ": ";
  out += d.severity == Severity::Error ? "error" : "warning";
  if (!d.code.empty()) out += "[" + d.code + "]";
  out += ": " + d.message;
  return out;
}

Rule make_rule(Term lhs, Term rhs, Term guard) {
  if (!(lhs.sort() == rhs.sort())) {
    throw SortMismatch("rule sides have sorts " + lhs.sort().name() + " and " +
                       rhs.sort().name());
  }
  if (!(guard.sort() == Sort::Bool()) || !is_theory_term(guard)) {
    throw SortMismatch("guard '" + to_string(guard) + "' is not a bool theory term");
  }
  if (lhs.is_var()) throw Error("left-hand side of a rule must not be a variable");
  if (is_theory_term(lhs)) throw Error("left-hand side '" + to_string(lhs) + "' is a theory term");
  return {std::move(lhs), std::move(rhs), std::move(guard), std::nullopt};
}

VarSet logical_vars(const Rule& r) {
  VarSet out = vars(r.guard);
  VarSet left = vars(r.lhs);
  for (const auto& v : vars(r.rhs))
    if (!left.count(v)) out.insert(v);
  return out;
}

std::string to_string(const Rule& r) {
  return to_string(r.lhs) + " -> " + to_string(r.rhs) + " [" + to_string(r.guard) + "]";
}

std::vector<Diagnostic> validate(const Lctrs& r) {
  std::vector<Diagnostic> out;
  for (const auto& f : r.signature.user_symbols()) {
    if (f->kind == SymbolKind::Constructor && f->result_sort.is_theory()) {
      out.push_back({Severity::Error, "theory-sorted-constructor",
                     "constructor '" + f->name + "' has theory sort " + f->result_sort.name(),
                     std::nullopt});
    }
  }
  for (const auto& rule : r.rules) {
    if (!is_linear(rule.lhs)) {
      out.push_back({Severity::Error, "non-left-linear",
                     "rule '" + to_string(rule) + "' is not left-linear", rule.span});
    }
    if (!is_pattern(rule.lhs)) {
      out.push_back({Severity::Warning, "lhs-not-pattern",
                     "left-hand side '" + to_string(rule.lhs) +
                         "' is not a pattern; the rule is ignored by the complement",
                     rule.span});
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

}  // namespace lcpat
