#include "linear.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat::detail {

namespace {

struct Overflow {};

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

LinExpr scale(const LinExpr& e, std::int64_t k) {
  LinExpr out;
  out.c = mul(e.c, k);
  if (k != 0)
    for (const auto& [x, a] : e.a) out.a[x] = mul(a, k);
  return out;
}

LinExpr sum(const LinExpr& l, const LinExpr& r, std::int64_t sign) {
  LinExpr out = l;
  out.c = add(out.c, mul(sign, r.c));
  for (const auto& [x, a] : r.a) {
    std::int64_t v = add(out.a[x], mul(sign, a));
    if (v == 0)
      out.a.erase(x);
    else
      out.a[x] = v;
  }
  return out;
}

LinExpr lin_rec(const Term& t) {
  if (t.is_var()) {
    if (!(t.sort() == Sort::Int())) throw Overflow{};
    LinExpr e;
    e.a[t.var()] = 1;
    return e;
  }
  if (auto v = t.int_value()) {
    LinExpr e;
    e.c = *v;
    return e;
  }
  const auto& f = t.symbol();
  if (!f.is_calculation() || f.arity() != 2) throw Overflow{};
  if (f.name == "+") return sum(lin_rec(t.args()[0]), lin_rec(t.args()[1]), 1);
  if (f.name == "-") return sum(lin_rec(t.args()[0]), lin_rec(t.args()[1]), -1);
  if (f.name == "*") {
    LinExpr l = lin_rec(t.args()[0]);
    LinExpr r = lin_rec(t.args()[1]);
    if (l.a.empty()) return scale(r, l.c);
    if (r.a.empty()) return scale(l, r.c);
    throw Overflow{};
  }
  if (is_ground(t)) {
    // div, mod, exp over ground arguments
    try {
      LinExpr e;
      e.c = *eval_ground(t).int_value();
      return e;
    } catch (const Error&) {
      throw Overflow{};
    }
  }
  throw Overflow{};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

enum class Norm { Keep, Trivial, Infeasible };

Norm normalize(Ineq& q) {
  for (auto it = q.a.begin(); it != q.a.end();) {
    if (it->second == 0)
      it = q.a.erase(it);
    else
      ++it;
  }
  if (q.a.empty()) return q.b >= 0 ? Norm::Trivial : Norm::Infeasible;
  std::int64_t g = 0;
  for (const auto& [_, a] : q.a) g = std::gcd(g, a < 0 ? -a : a);
  if (g > 1) {
    for (auto& [_, a] : q.a) a /= g;
    q.b = floor_div(q.b, g);
  }
  return Norm::Keep;
}

// Merges a system: drops trivial rows, keeps the tightest bound per coefficient vector.
bool tidy(std::vector<Ineq>& sys) {
  std::map<Coeffs, std::int64_t> best;
  for (auto& q : sys) {
    Norm n = normalize(q);
    if (n == Norm::Infeasible) return false;
    if (n == Norm::Trivial) continue;
    auto it = best.find(q.a);
    if (it == best.end())
      best.emplace(q.a, q.b);
    else
      it->second = std::min(it->second, q.b);
  }
  sys.clear();
  for (auto& [a, b] : best) sys.push_back({a, b});
  // Opposite rows a.x <= b1 and -a.x <= b2 need b1 + b2 >= 0.
  for (const auto& q : sys) {
    Coeffs neg;
    for (const auto& [x, a] : q.a) neg[x] = -a;
    auto it = best.find(neg);
    if (it != best.end() && static_cast<__int128>(q.b) + it->second < 0) return false;
  }
  return true;
}

constexpr std::size_t kMaxRows = 20000;

}  // namespace

std::optional<LinExpr> linearize(const Term& t) {
  try {
    return lin_rec(t);
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

std::optional<Ineq> make_ineq(const LinExpr& lhs, const LinExpr& rhs, std::int64_t shift) {
  try {
    LinExpr d = sum(lhs, rhs, -1);
    Ineq q;
    q.a = d.a;
    q.b = -add(d.c, shift);
    return q;
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

Term ineq_to_term(const Ineq& q) {
  std::optional<Term> acc;
  for (const auto& [x, a] : q.a) {
    Term v = Term::variable(x);
    Term m = a == 1 ? v : theory::mk_mul(theory::num(a), v);
    acc = acc ? theory::mk_add(*acc, m) : m;
  }
  if (!acc) acc = theory::num(0);
  return theory::mk_le(*acc, theory::num(q.b));
}

Projection eliminate(std::vector<Ineq> system, const VarSet& targets) {
  Projection p;
  if (!tidy(system)) {
    p.status = FmStatus::Infeasible;
    return p;
  }
  try {
    for (;;) {
      // Pick the cheapest target still present, preferring unit coefficients.
      std::optional<Var> best;
      long best_cost = 0;
      bool best_unit = false;
      std::map<Var, std::pair<long, long>> counts;
      std::map<Var, bool> unit;
      for (const auto& q : system) {
        for (const auto& [x, a] : q.a) {
          if (!targets.count(x)) continue;
          auto& c = counts[x];
          (a > 0 ? c.first : c.second) += 1;
          if (!unit.count(x)) unit[x] = true;
          if (a != 1 && a != -1) unit[x] = false;
        }
      }
      for (const auto& [x, c] : counts) {
        long cost = c.first * c.second - c.first - c.second;
        bool u = unit[x];
        if (!best || (u && !best_unit) || (u == best_unit && cost < best_cost)) {
          best = x;
          best_cost = cost;
          best_unit = u;
        }
      }
      if (!best) break;
      const Var x = *best;
      p.order.push_back(x);
      p.stages.push_back(system);
      std::vector<Ineq> pos, neg, rest;
      for (auto& q : system) {
        auto it = q.a.find(x);
        if (it == q.a.end())
          rest.push_back(q);
        else if (it->second > 0)
          pos.push_back(q);
        else
          neg.push_back(q);
      }
      if (pos.size() * neg.size() + rest.size() > kMaxRows) {
        p.status = FmStatus::TooLarge;
        return p;
      }
      for (const auto& up : pos) {
        std::int64_t ap = up.a.at(x);
        for (const auto& lo : neg) {
          std::int64_t an = -lo.a.at(x);
          if (ap != 1 && an != 1) p.exact = false;
          Ineq c;
          for (const auto& [y, a] : up.a) c.a[y] = add(c.a[y], mul(a, an));
          for (const auto& [y, a] : lo.a) c.a[y] = add(c.a[y], mul(a, ap));
          c.a.erase(x);
          c.b = add(mul(up.b, an), mul(lo.b, ap));
          rest.push_back(std::move(c));
        }
      }
      system = std::move(rest);
      if (!tidy(system)) {
        p.status = FmStatus::Infeasible;
        p.residue.clear();
        return p;
      }
    }
  } catch (const Overflow&) {
    p.status = FmStatus::TooLarge;
    return p;
  }
  p.residue = std::move(system);
  return p;
}

namespace {

constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();
constexpr std::size_t kCandidates = 24;

struct Search {
  const Projection& p;
  Model& model;
  std::map<Var, std::int64_t> val;
  std::size_t nodes = 0;
  bool truncated = false;
  bool out_of_budget = false;

  // Bounds on order[k] from stage k given later variables.
  bool bounds(std::size_t k, std::int64_t& lo, std::int64_t& hi, bool& has_lo, bool& has_hi) {
    const Var& x = p.order[k];
    has_lo = has_hi = false;
    lo = hi = 0;
    for (const auto& q : p.stages[k]) {
      auto it = q.a.find(x);
      if (it == q.a.end()) continue;
      __int128 rest = q.b;
      for (const auto& [y, a] : q.a) {
        if (y == x) continue;
        rest -= static_cast<__int128>(a) * val.at(y);
      }
      std::int64_t a = it->second;
      if (rest > INT64_MAX / 2 || rest < INT64_MIN / 2) return false;
      std::int64_t r = static_cast<std::int64_t>(rest);
      if (a > 0) {
        std::int64_t u = floor_div(r, a);
        if (!has_hi || u < hi) hi = u;
        has_hi = true;
      } else {
        std::int64_t l = ceil_div(r, a);
        if (!has_lo || l > lo) lo = l;
        has_lo = true;
      }
    }
    return true;
  }

  std::vector<std::int64_t> candidates(std::int64_t lo, std::int64_t hi, bool has_lo, bool has_hi) {
    std::vector<std::int64_t> out;
    std::int64_t start = 0;
    if (has_lo && lo > 0) start = lo;
    if (has_hi && hi < 0) start = hi;
    auto inside = [&](std::int64_t v) { return (!has_lo || v >= lo) && (!has_hi || v <= hi); };
    if (!inside(start)) return out;
    out.push_back(start);
    for (std::int64_t d = 1; out.size() < kCandidates; ++d) {
      bool any = false;
      if (start + d > start && inside(start + d)) {
        out.push_back(start + d);
        any = true;
      }
      if (out.size() < kCandidates && start - d < start && inside(start - d)) {
        out.push_back(start - d);
        any = true;
      }
      if (!any) return out;
    }
    truncated = true;
    return out;
  }

  bool dfs(std::size_t k) {
    if (++nodes > 200000) {
      out_of_budget = true;
      return false;
    }
    std::int64_t lo, hi;
    bool has_lo, has_hi;
    if (!bounds(k, lo, hi, has_lo, has_hi)) {
      truncated = true;
      return false;
    }
    for (std::int64_t v : candidates(lo, hi, has_lo, has_hi)) {
      val[p.order[k]] = v;
      if (k == 0 || dfs(k - 1)) return true;
      if (out_of_budget) return false;
    }
    val.erase(p.order[k]);
    return false;
  }
};

}  // namespace

SearchStatus find_model(const Projection& p, Model& out) {
  if (p.status != FmStatus::Feasible) return SearchStatus::GaveUp;
  if (p.order.empty()) return SearchStatus::Found;
  Search s{p, out, {}, 0, false, false};
  // Variables dropped together with one-sided rows are unconstrained; 0 fits them.
  std::set<Var> ordered(p.order.begin(), p.order.end());
  for (const auto& stage : p.stages)
    for (const auto& q : stage)
      for (const auto& [y, _] : q.a)
        if (!ordered.count(y)) s.val.emplace(y, 0);
  if (s.dfs(p.order.size() - 1)) {
    for (const auto& [x, v] : s.val) out.insert_or_assign(x, theory::num(v));
    return SearchStatus::Found;
  }
  return (s.truncated || s.out_of_budget) ? SearchStatus::GaveUp : SearchStatus::Exhausted;
}

// ---------------------------------------------------------------------------
// Case split

namespace {

struct Item {
  Term t;
  bool pos;
};

struct Splitter {
  const std::function<bool(Leaf&)>& visit;
  std::size_t budget;
  std::size_t leaves = 0;
  bool exhausted_budget = false;
  bool stop = false;

  void add_cmp(const std::string& op, const Term& l, const Term& r, Leaf& leaf,
               const Term& original, bool pos, std::vector<std::vector<Item>>& alt) {
    auto ll = linearize(l);
    auto rl = linearize(r);
    if (!ll || !rl) {
      leaf.opaque.push_back(pos ? original : theory::mk_not(original));
      return;
    }
    auto push = [&](const LinExpr& a, const LinExpr& b, std::int64_t shift) {
      auto q = make_ineq(a, b, shift);
      if (!q) return false;
      leaf.ineqs.push_back(*q);
      return true;
    };
    bool ok = true;
    if (op == "<=") ok = push(*ll, *rl, 0);
    else if (op == "<") ok = push(*ll, *rl, 1);
    else if (op == ">=") ok = push(*rl, *ll, 0);
    else if (op == ">") ok = push(*rl, *ll, 1);
    else if (op == "=") ok = push(*ll, *rl, 0) && push(*rl, *ll, 0);
    else if (op == "!=") {
      alt.push_back({Item{theory::mk_lt(l, r), true}});
      alt.push_back({Item{theory::mk_gt(l, r), true}});
    }
    if (!ok) leaf.opaque.push_back(pos ? original : theory::mk_not(original));
  }

  void run(std::vector<Item> todo, Leaf leaf) {
    while (!todo.empty() && !stop) {
      Item it = todo.back();
      todo.pop_back();
      const Term& t = it.t;
      if (auto b = t.bool_value()) {
        if (*b != it.pos) return;  // branch is false
        continue;
      }
      if (t.is_var()) {
        auto [pos_it, inserted] = leaf.bools.emplace(t.var(), it.pos);
        if (!inserted && pos_it->second != it.pos) return;
        continue;
      }
      const auto& f = t.symbol();
      const std::string& n = f.name;
      std::vector<std::vector<Item>> alt;
      bool is_bool_op = f.is_calculation() && !f.arg_sorts.empty() && f.arg_sorts[0] == Sort::Bool();
      if (f.is_calculation() && n == "not") {
        todo.push_back({t.args()[0], !it.pos});
        continue;
      }
      if (is_bool_op && n == "/\\") {
        if (it.pos) {
          todo.push_back({t.args()[1], true});
          todo.push_back({t.args()[0], true});
          continue;
        }
        alt = {{{t.args()[0], false}}, {{t.args()[1], false}}};
      } else if (is_bool_op && n == "\\/") {
        if (!it.pos) {
          todo.push_back({t.args()[1], false});
          todo.push_back({t.args()[0], false});
          continue;
        }
        alt = {{{t.args()[0], true}}, {{t.args()[1], true}}};
      } else if (is_bool_op && n == "=>") {
        if (!it.pos) {
          todo.push_back({t.args()[1], false});
          todo.push_back({t.args()[0], true});
          continue;
        }
        alt = {{{t.args()[0], false}}, {{t.args()[1], true}}};
      } else if (is_bool_op && (n == "<=>" || n == "=" || n == "!=")) {
        bool same = (n == "!=") ? !it.pos : it.pos;
        if (same)
          alt = {{{t.args()[0], true}, {t.args()[1], true}},
                 {{t.args()[0], false}, {t.args()[1], false}}};
        else
          alt = {{{t.args()[0], true}, {t.args()[1], false}},
                 {{t.args()[0], false}, {t.args()[1], true}}};
      } else if (f.is_calculation() && f.arity() == 2 &&
                 (n == "<=" || n == "<" || n == ">=" || n == ">" || n == "=" || n == "!=")) {
        static const std::map<std::string, std::string> flip = {
            {"<=", ">"}, {"<", ">="}, {">=", "<"}, {">", "<="}, {"=", "!="}, {"!=", "="}};
        std::string op = it.pos ? n : flip.at(n);
        add_cmp(op, t.args()[0], t.args()[1], leaf, t, it.pos, alt);
        if (alt.empty()) continue;
      } else {
        leaf.opaque.push_back(it.pos ? t : theory::mk_not(t));
        continue;
      }
      for (auto& branch : alt) {
        if (stop) return;
        std::vector<Item> next = todo;
        for (auto& b : branch) next.push_back(b);
        run(std::move(next), leaf);
      }
      return;
    }
    if (stop) return;
    if (++leaves > budget) {
      exhausted_budget = true;
      stop = true;
      return;
    }
    if (!visit(leaf)) stop = true;
  }
};

}  // namespace

bool for_each_branch(const Term& phi, const std::function<bool(Leaf&)>& visit,
                     std::size_t budget) {
  Splitter s{visit, budget};
  s.run({Item{phi, true}}, Leaf{});
  return !s.exhausted_budget;
}

}  // namespace lcpat::detail
