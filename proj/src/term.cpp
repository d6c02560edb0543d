#include "lcpat/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "lcpat/errors.hpp"

namespace lcpat {

const Sort& Sort::Int() {
  static const Sort s("int", SortKind::Theory);
  return s;
}

const Sort& Sort::Bool() {
  static const Sort s("bool", SortKind::Theory);
  return s;
}

bool same_symbol(const FunctionSymbol& a, const FunctionSymbol& b) {
  return a.name == b.name && a.arg_sorts == b.arg_sorts;
}

struct Term::Node {
  bool is_var = false;
  Var var;
  Symbol sym;
  std::vector<Term> args;
  std::size_t hash = 0;
  unsigned height = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->hash = mix(std::hash<std::string>{}(v.name), 0x51ed27);
  n->var = std::move(v);
  n->height = 0;
  return Term(std::move(n));
}

Term Term::apply(Symbol f, std::vector<Term> args) {
  if (!f) throw Error("null function symbol");
  if (args.size() != f->arity()) {
    throw SortMismatch("symbol '" + f->name + "' expects " + std::to_string(f->arity()) +
                       " argument(s), got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!(args[i].sort() == f->arg_sorts[i])) {
      throw SortMismatch("argument " + std::to_string(i + 1) + " of '" + f->name +
                         "' has sort " + args[i].sort().name() + ", expected " +
                         f->arg_sorts[i].name());
    }
  }
  auto n = std::make_shared<Node>();
  std::size_t h = std::hash<std::string>{}(f->name);
  unsigned ht = 0;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    ht = std::max(ht, a.height());
  }
  n->hash = h;
  n->height = 1 + ht;
  n->sym = std::move(f);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool Term::is_var() const { return node_->is_var; }

const Var& Term::var() const {
  if (!node_->is_var) throw Error("term is not a variable");
  return node_->var;
}

const FunctionSymbol& Term::symbol() const {
  if (node_->is_var) throw Error("variable has no function symbol");
  return *node_->sym;
}

const Symbol& Term::symbol_ptr() const {
  if (node_->is_var) throw Error("variable has no function symbol");
  return node_->sym;
}

std::span<const Term> Term::args() const { return node_->args; }

const Sort& Term::sort() const {
  return node_->is_var ? node_->var.sort : node_->sym->result_sort;
}

std::size_t Term::hash() const { return node_->hash; }
unsigned Term::height() const { return node_->height; }

std::optional<std::int64_t> Term::int_value() const {
  if (is_value() && sort() == Sort::Int()) return symbol().value;
  return std::nullopt;
}

std::optional<bool> Term::bool_value() const {
  if (is_value() && sort() == Sort::Bool()) return symbol().value != 0;
  return std::nullopt;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->is_var != b.node_->is_var) return false;
  if (a.node_->is_var) return a.node_->var == b.node_->var;
  if (!same_symbol(*a.node_->sym, *b.node_->sym)) return false;
  return a.node_->args == b.node_->args;
}

std::string to_string(const Position& p) {
  if (p.path.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p.path[i]);
  }
  return out;
}

unsigned height(const Term& t) { return t.height(); }

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t idx : p.path) {
    if (cur->is_var() || idx == 0 || idx > cur->args().size()) {
      throw InvalidPosition("position " + to_string(p) + " is not valid in " + to_string(t));
    }
    cur = &cur->args()[idx - 1];
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& s,
                 const Term& whole) {
  if (depth == p.path.size()) {
    if (!(t.sort() == s.sort())) {
      throw SortMismatch("replacement of sort " + s.sort().name() + " at position " +
                         to_string(p) + " where sort " + t.sort().name() + " is expected");
    }
    return s;
  }
  std::size_t idx = p.path[depth];
  if (t.is_var() || idx == 0 || idx > t.args().size()) {
    throw InvalidPosition("position " + to_string(p) + " is not valid in " + to_string(whole));
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[idx - 1] = replace_rec(args[idx - 1], p, depth + 1, s, whole);
  return Term::apply(t.symbol_ptr(), std::move(args));
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  if (t.is_var()) return;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    cur.path.push_back(i + 1);
    positions_rec(t.args()[i], cur, out);
    cur.path.pop_back();
  }
}

void count_vars(const Term& t, std::unordered_map<std::string, int>& counts,
                const VarSet* only) {
  if (t.is_var()) {
    if (!only || only->count(t.var())) ++counts[t.var().name + "\x1f" + t.var().sort.name()];
    return;
  }
  for (const auto& a : t.args()) count_vars(a, counts, only);
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_rec(t, p, 0, replacement, t);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out);
  return out;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.is_var()) {
    out.insert(t.var());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

VarSet vars(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

std::vector<Var> vars_in_order(const Term& t) {
  std::vector<Var> out;
  VarSet seen;
  std::function<void(const Term&)> rec = [&](const Term& u) {
    if (u.is_var()) {
      if (seen.insert(u.var()).second) out.push_back(u.var());
      return;
    }
    for (const auto& a : u.args()) rec(a);
  };
  rec(t);
  return out;
}

bool occurs(const Var& x, const Term& t) {
  if (t.is_var()) return t.var() == x;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs(x, a); });
}

bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_ground);
}

bool is_linear(const Term& t) {
  std::unordered_map<std::string, int> counts;
  count_vars(t, counts, nullptr);
  return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second <= 1; });
}

bool is_linear_wrt(const Term& t, const VarSet& xs) {
  std::unordered_map<std::string, int> counts;
  count_vars(t, counts, &xs);
  return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second <= 1; });
}

bool is_theory_term(const Term& t) {
  if (t.is_var()) return t.sort().is_theory();
  if (!t.symbol().is_theory()) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_theory_term);
}

bool is_value_free(const Term& t) {
  if (t.is_var()) return true;
  if (t.symbol().is_value()) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_value_free);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum class Assoc { Left, Right, None };

struct OpInfo {
  int prec;
  Assoc assoc;
};

std::optional<OpInfo> infix_info(const FunctionSymbol& f) {
  if (!f.is_calculation() || f.arity() != 2) return std::nullopt;
  static const std::unordered_map<std::string, OpInfo> table = {
      {"=>", {1, Assoc::Right}}, {"<=>", {1, Assoc::None}}, {"\\/", {2, Assoc::Left}},
      {"/\\", {3, Assoc::Left}}, {"=", {5, Assoc::None}},   {"!=", {5, Assoc::None}},
      {"<=", {5, Assoc::None}},  {"<", {5, Assoc::None}},   {">=", {5, Assoc::None}},
      {">", {5, Assoc::None}},   {"+", {6, Assoc::Left}},   {"-", {6, Assoc::Left}},
      {"*", {7, Assoc::Left}},   {"div", {7, Assoc::Left}}, {"mod", {7, Assoc::Left}},
      {"exp", {8, Assoc::Right}},
  };
  auto it = table.find(f.name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

constexpr int kAtomPrec = 100;
constexpr int kNotPrec = 4;

int precedence(const Term& t) {
  if (t.is_var()) return kAtomPrec;
  const auto& f = t.symbol();
  if (f.is_calculation() && f.name == "not" && f.arity() == 1) return kNotPrec;
  if (auto info = infix_info(f)) return info->prec;
  return kAtomPrec;
}

void print(const Term& t, std::ostream& os);

void print_child(const Term& c, int min_prec, std::ostream& os) {
  if (precedence(c) < min_prec) {
    os << '(';
    print(c, os);
    os << ')';
  } else {
    print(c, os);
  }
}

void print(const Term& t, std::ostream& os) {
  if (t.is_var()) {
    os << t.var().name;
    return;
  }
  const auto& f = t.symbol();
  if (f.is_value()) {
    os << f.name;
    return;
  }
  if (f.is_calculation() && f.name == "not" && f.arity() == 1) {
    os << "not ";
    print_child(t.args()[0], kAtomPrec, os);
    return;
  }
  if (auto info = infix_info(f)) {
    int lp = info->assoc == Assoc::Left ? info->prec : info->prec + 1;
    int rp = info->assoc == Assoc::Right ? info->prec : info->prec + 1;
    print_child(t.args()[0], lp, os);
    os << ' ' << f.name << ' ';
    print_child(t.args()[1], rp, os);
    return;
  }
  os << f.name;
  if (f.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) os << ", ";
    print(t.args()[i], os);
  }
  os << ')';
}

void canonical_rec(const Term& t, std::vector<Var>& seen, std::string& out) {
  if (t.is_var()) {
    auto it = std::find(seen.begin(), seen.end(), t.var());
    std::size_t idx = static_cast<std::size_t>(it - seen.begin());
    if (it == seen.end()) seen.push_back(t.var());
    out += '?';
    out += std::to_string(idx);
    out += ':';
    out += t.sort().name();
    return;
  }
  out += t.symbol().name;
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    canonical_rec(t.args()[i], seen, out);
  }
  out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(t, os);
  return os.str();
}

std::string canonical_key(const Term& t) {
  std::vector<Var> seen;
  std::string out;
  canonical_rec(t, seen, out);
  return out;
}

}  // namespace lcpat
