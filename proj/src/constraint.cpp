#include "lcpat/constraint.hpp"

#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat {

namespace {

std::int64_t checked(bool overflow, std::int64_t r, const char* op) {
  if (overflow) throw EvalError(std::string("integer overflow in ") + op);
  return r;
}

std::int64_t euclid_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) throw DivisionByZero("mod by zero");
  if (b == -1) return 0;
  std::int64_t r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

std::int64_t euclid_div(std::int64_t a, std::int64_t b) {
  if (b == 0) throw DivisionByZero("div by zero");
  if (b == -1) return checked(a == INT64_MIN, -a, "div");
  std::int64_t r = euclid_mod(a, b);
  return static_cast<std::int64_t>((static_cast<__int128>(a) - r) / b);
}

std::int64_t power(std::int64_t a, std::int64_t e) {
  if (e < 0) throw EvalError("exp with negative exponent");
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    std::int64_t next = 0;
    if (__builtin_mul_overflow(r, a, &next)) throw EvalError("integer overflow in exp");
    r = next;
    if (r == 0 || r == 1) break;
    if (r == -1) {
      // (-1)^e alternates; finish by parity.
      if ((e - i - 1) % 2 == 1) r = 1;
      break;
    }
  }
  return r;
}

}  // namespace

Term eval_ground(const Term& t) {
  if (t.is_var()) throw NonGroundTerm("variable '" + t.var().name + "' in ground evaluation");
  const auto& f = t.symbol();
  if (f.is_value()) return t;
  if (!f.is_calculation()) {
    throw EvalError("symbol '" + f.name + "' has no interpretation");
  }
  std::vector<Term> vals;
  vals.reserve(t.args().size());
  for (const auto& a : t.args()) vals.push_back(eval_ground(a));
  const std::string& n = f.name;
  if (n == "not") return theory::boolean(!*vals[0].bool_value());
  if (f.arg_sorts[0] == Sort::Bool()) {
    bool a = *vals[0].bool_value();
    bool b = *vals[1].bool_value();
    if (n == "/\\") return theory::boolean(a && b);
    if (n == "\\/") return theory::boolean(a || b);
    if (n == "=>") return theory::boolean(!a || b);
    if (n == "<=>" || n == "=") return theory::boolean(a == b);
    if (n == "!=") return theory::boolean(a != b);
  } else {
    std::int64_t a = *vals[0].int_value();
    std::int64_t b = *vals[1].int_value();
    std::int64_t r = 0;
    if (n == "+") {
      bool ov = __builtin_add_overflow(a, b, &r);
      return theory::num(checked(ov, r, "+"));
    }
    if (n == "-") {
      bool ov = __builtin_sub_overflow(a, b, &r);
      return theory::num(checked(ov, r, "-"));
    }
    if (n == "*") {
      bool ov = __builtin_mul_overflow(a, b, &r);
      return theory::num(checked(ov, r, "*"));
    }
    if (n == "div") return theory::num(euclid_div(a, b));
    if (n == "mod") return theory::num(euclid_mod(a, b));
    if (n == "exp") return theory::num(power(a, b));
    if (n == "=") return theory::boolean(a == b);
    if (n == "!=") return theory::boolean(a != b);
    if (n == "<=") return theory::boolean(a <= b);
    if (n == "<") return theory::boolean(a < b);
    if (n == ">=") return theory::boolean(a >= b);
    if (n == ">") return theory::boolean(a > b);
  }
  throw EvalError("unknown calculation symbol '" + n + "'");
}

bool eval_constraint(const Term& phi) {
  auto v = eval_ground(phi).bool_value();
  if (!v) throw EvalError("constraint does not evaluate to a boolean");
  return *v;
}

Term ground_with(const Term& t, const Model& m) {
  if (t.is_var()) {
    auto it = m.find(t.var());
    if (it != m.end()) return it->second;
    if (t.sort() == Sort::Int()) return theory::num(0);
    if (t.sort() == Sort::Bool()) return theory::boolean(false);
    return t;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(ground_with(a, m));
  return Term::apply(t.symbol_ptr(), std::move(args));
}

namespace {

void flatten(const Term& t, const Symbol& op, std::vector<Term>& out) {
  if (theory::is_symbol(t, op)) {
    flatten(t.args()[0], op, out);
    flatten(t.args()[1], op, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<Term> conjuncts(const Term& phi) {
  std::vector<Term> parts;
  flatten(phi, theory::conj(), parts);
  std::vector<Term> out;
  for (auto& p : parts)
    if (!theory::is_true(p)) out.push_back(p);
  return out;
}

Term conjunction(const std::vector<Term>& parts) {
  if (parts.empty()) return theory::top();
  Term acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = theory::mk_and(acc, parts[i]);
  return acc;
}

Term disjunction(const std::vector<Term>& parts) {
  if (parts.empty()) return theory::bottom();
  Term acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = theory::mk_or(acc, parts[i]);
  return acc;
}

Term simplify_cosmetic(const Term& phi) {
  if (phi.is_var() || phi.args().empty()) return phi;
  if (theory::is_symbol(phi, theory::neg())) {
    const Term& a = phi.args()[0];
    if (theory::is_symbol(a, theory::neg())) return simplify_cosmetic(a.args()[0]);
    return theory::mk_not(simplify_cosmetic(a));
  }
  if (theory::is_symbol(phi, theory::conj())) {
    std::vector<Term> parts;
    flatten(phi, theory::conj(), parts);
    std::vector<Term> kept;
    for (auto& p : parts) {
      Term s = simplify_cosmetic(p);
      std::vector<Term> inner;
      flatten(s, theory::conj(), inner);
      for (auto& q : inner)
        if (!theory::is_true(q)) kept.push_back(q);
    }
    return conjunction(kept);
  }
  if (theory::is_symbol(phi, theory::disj())) {
    std::vector<Term> parts;
    flatten(phi, theory::disj(), parts);
    std::vector<Term> kept;
    for (auto& p : parts) {
      Term s = simplify_cosmetic(p);
      std::vector<Term> inner;
      flatten(s, theory::disj(), inner);
      for (auto& q : inner)
        if (!theory::is_false(q)) kept.push_back(q);
    }
    return disjunction(kept);
  }
  if (phi.symbol().is_calculation()) {
    std::vector<Term> args;
    for (const auto& a : phi.args()) args.push_back(simplify_cosmetic(a));
    return Term::apply(phi.symbol_ptr(), std::move(args));
  }
  return phi;
}

}  // namespace lcpat
