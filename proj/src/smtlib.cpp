#include "lcpat/smtlib.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat {

namespace {

bool is_reserved_smt(const std::string& s) {
  static const std::set<std::string> words = {
      "and", "or", "not", "=>", "=", "distinct", "ite", "let", "forall", "exists", "Int",
      "Bool", "true", "false", "div", "mod", "abs", "par", "as", "_", "!", "NUMERAL",
      "DECIMAL", "STRING", "assert", "check-sat", "declare-const", "declare-fun",
      "define-fun", "push", "pop", "reset", "exit", "echo", "get-model", "set-logic",
      "set-option", "xor", "to_real", "to_int", "is_int"};
  return words.count(s) != 0;
}

std::string sort_name(const Sort& s) {
  if (s == Sort::Int()) return "Int";
  if (s == Sort::Bool()) return "Bool";
  throw UnsupportedSymbol("sort '" + s.name() + "' has no SMT-LIB counterpart");
}

void render(const Term& t, std::ostream& os) {
  if (t.is_var()) {
    sort_name(t.sort());
    os << smtlib_symbol(t.var().name);
    return;
  }
  const auto& f = t.symbol();
  if (f.is_value()) {
    if (t.sort() == Sort::Bool()) {
      os << (f.value ? "true" : "false");
    } else if (f.value < 0) {
      std::string digits = std::to_string(f.value).substr(1);
      os << "(- " << digits << ")";
    } else {
      os << f.value;
    }
    return;
  }
  if (!f.is_calculation()) {
    throw UnsupportedSymbol("symbol '" + f.name + "' is not a theory symbol");
  }
  static const std::map<std::string, std::string> names = {
      {"/\\", "and"}, {"\\/", "or"},  {"not", "not"}, {"=>", "=>"}, {"<=>", "="},
      {"=", "="},     {"!=", "distinct"}, {"+", "+"},  {"-", "-"},  {"*", "*"},
      {"div", "div"}, {"mod", "mod"}, {"<=", "<="},   {"<", "<"},  {">=", ">="},
      {">", ">"}};
  auto it = names.find(f.name);
  if (it == names.end()) {
    throw UnsupportedSymbol("symbol '" + f.name + "' has no SMT-LIB counterpart");
  }
  os << '(' << it->second;
  for (const auto& a : t.args()) {
    os << ' ';
    render(a, os);
  }
  os << ')';
}

}  // namespace

std::string smtlib_symbol(const std::string& name) {
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) simple = false;
  }
  if (simple && !is_reserved_smt(name)) return name;
  return "|" + name + "|";
}

std::string smtlib_term(const Term& phi) {
  std::ostringstream os;
  render(phi, os);
  return os.str();
}

std::string to_smtlib(const Term& phi, const std::string& logic) {
  std::ostringstream os;
  std::string body = smtlib_term(phi);
  os << "(set-logic " << logic << ")\n";
  for (const auto& v : vars(phi))
    os << "(declare-const " << smtlib_symbol(v.name) << ' ' << sort_name(v.sort) << ")\n";
  os << "(assert " << body << ")\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// S-expressions

namespace {

struct Reader {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (i >= s.size()) throw ProtocolError("unexpected end of s-expression");
    char c = s[i];
    if (c == '(') {
      ++i;
      SExpr e;
      for (;;) {
        skip();
        if (i >= s.size()) throw ProtocolError("unterminated list");
        if (s[i] == ')') {
          ++i;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (c == ')') throw ProtocolError("unexpected ')'");
    if (c == '|') {
      std::size_t end = s.find('|', i + 1);
      if (end == std::string::npos) throw ProtocolError("unterminated quoted symbol");
      SExpr e;
      e.atom = s.substr(i + 1, end - i - 1);
      if (e.atom.empty()) throw ProtocolError("empty quoted symbol");
      i = end + 1;
      return e;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size()) {
        if (s[j] == '"') {
          if (j + 1 < s.size() && s[j + 1] == '"') {
            j += 2;
            continue;
          }
          break;
        }
        ++j;
      }
      if (j >= s.size()) throw ProtocolError("unterminated string");
      SExpr e;
      e.atom = s.substr(i, j - i + 1);
      i = j + 1;
      return e;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
           s[j] != ')' && s[j] != ';')
      ++j;
    SExpr e;
    e.atom = s.substr(i, j - i);
    i = j;
    return e;
  }
};

bool is_numeral(const std::string& a) {
  if (a.empty()) return false;
  for (char c : a)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::int64_t parse_numeral(const std::string& a) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(a, &pos);
    if (pos != a.size()) throw ProtocolError("bad numeral '" + a + "'");
    return v;
  } catch (const std::out_of_range&) {
    throw ProtocolError("numeral out of range: " + a);
  }
}

Term fold(const Symbol& op, const std::vector<Term>& args, bool right = false) {
  if (args.size() < 2) throw ProtocolError("operator '" + op->name + "' needs two arguments");
  if (right) {
    Term acc = args.back();
    for (std::size_t i = args.size() - 1; i-- > 0;) acc = Term::apply(op, {args[i], acc});
    return acc;
  }
  Term acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) acc = Term::apply(op, {acc, args[i]});
  return acc;
}

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& text) {
  Reader r{text};
  std::vector<SExpr> out;
  for (;;) {
    r.skip();
    if (r.i >= text.size()) return out;
    out.push_back(r.read());
  }
}

Term from_smtlib(const SExpr& e, const std::map<std::string, Sort>& decls) {
  if (e.is_atom()) {
    if (e.atom == "true") return theory::boolean(true);
    if (e.atom == "false") return theory::boolean(false);
    if (is_numeral(e.atom)) return theory::num(parse_numeral(e.atom));
    auto it = decls.find(e.atom);
    if (it == decls.end()) throw UnknownSymbol("undeclared SMT-LIB symbol '" + e.atom + "'");
    return Term::variable(e.atom, it->second);
  }
  if (e.list.empty() || !e.list[0].is_atom()) throw ProtocolError("malformed application");
  const std::string& head = e.list[0].atom;
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.list.size(); ++i) args.push_back(from_smtlib(e.list[i], decls));
  if (head == "-" && args.size() == 1) {
    if (auto v = args[0].int_value()) return theory::num(-*v);
    return theory::mk_sub(theory::num(0), args[0]);
  }
  if (head == "not") {
    if (args.size() != 1) throw ProtocolError("not expects one argument");
    return theory::mk_not(args[0]);
  }
  if (head == "and") return args.size() == 1 ? args[0] : fold(theory::conj(), args);
  if (head == "or") return args.size() == 1 ? args[0] : fold(theory::disj(), args);
  if (head == "=>") return fold(theory::implies(), args, true);
  if (head == "=" || head == "distinct") {
    if (args.size() != 2) throw ProtocolError(head + " expects two arguments");
    if (args[0].sort() == Sort::Bool()) {
      Term iff = theory::mk_iff(args[0], args[1]);
      return head == "=" ? iff : theory::mk_not(iff);
    }
    return head == "=" ? theory::mk_eq(args[0], args[1]) : theory::mk_neq(args[0], args[1]);
  }
  if (head == "+") return fold(theory::plus(), args);
  if (head == "-") return fold(theory::minus(), args);
  if (head == "*") return fold(theory::times(), args);
  if (head == "div") return fold(theory::div(), args);
  if (head == "mod") return fold(theory::mod(), args);
  if (args.size() == 2) {
    if (head == "<=") return theory::mk_le(args[0], args[1]);
    if (head == "<") return theory::mk_lt(args[0], args[1]);
    if (head == ">=") return theory::mk_ge(args[0], args[1]);
    if (head == ">") return theory::mk_gt(args[0], args[1]);
  }
  throw UnknownSymbol("unsupported SMT-LIB operator '" + head + "'");
}

namespace {

void collect_defs(const SExpr& e, const std::map<std::string, Var>& names, Model& out) {
  if (e.is_atom()) return;
  if (e.list.size() == 5 && e.list[0].is_atom() && e.list[0].atom == "define-fun" &&
      e.list[1].is_atom() && !e.list[2].is_atom() && e.list[2].list.empty() &&
      e.list[3].is_atom()) {
    auto it = names.find(e.list[1].atom);
    if (it == names.end()) return;
    const SExpr& v = e.list[4];
    try {
      if (e.list[3].atom == "Int") {
        if (v.is_atom() && is_numeral(v.atom)) {
          out.insert_or_assign(it->second, theory::num(parse_numeral(v.atom)));
        } else if (!v.is_atom() && v.list.size() == 2 && v.list[0].atom == "-" &&
                   v.list[1].is_atom() && is_numeral(v.list[1].atom)) {
          out.insert_or_assign(it->second, theory::num(-parse_numeral(v.list[1].atom)));
        }
      } else if (e.list[3].atom == "Bool" && v.is_atom()) {
        if (v.atom == "true") out.insert_or_assign(it->second, theory::boolean(true));
        if (v.atom == "false") out.insert_or_assign(it->second, theory::boolean(false));
      }
    } catch (const ProtocolError&) {
      // out-of-range value: leave unassigned, validation decides
    }
    return;
  }
  for (const auto& c : e.list) collect_defs(c, names, out);
}

}  // namespace

Model parse_model(const std::string& text, const VarSet& expected) {
  std::map<std::string, Var> names;
  for (const auto& v : expected) names.emplace(v.name, v);
  Model out;
  for (const auto& e : parse_sexprs(text)) collect_defs(e, names, out);
  return out;
}

}  // namespace lcpat
