#include "lcpat/io.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "json.hpp"
#include "lcpat/errors.hpp"
#include "lcpat/theory.hpp"

namespace lcpat {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident, Int, LParen, RParen, LBrack, RBrack, Comma, Semi, Colon, Star, Plus, Minus,
  Arrow, Implies, Iff, Eq, Neq, Le, Lt, Ge, Gt, And, Or, End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
  std::int64_t value = 0;
};

struct ParseError {
  Diagnostic diag;
};

[[noreturn]] void fail(const SourceSpan& span, std::string code, std::string msg) {
  throw ParseError{{Severity::Error, std::move(code), std::move(msg), span}};
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  SourceSpan out = a;
  out.end = b.end;
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto operand_before = [&] {
    if (out.empty()) return false;
    Tok k = out.back().kind;
    return k == Tok::Ident || k == Tok::Int || k == Tok::RParen;
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = {line, col, i, i};
    std::size_t len = 0;
    bool neg_literal = c == '-' && i + 1 < src.size() &&
                       std::isdigit(static_cast<unsigned char>(src[i + 1])) && !operand_before();
    if (ident_start(c)) {
      len = 1;
      while (i + len < src.size() && ident_char(src[i + len])) ++len;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || neg_literal) {
      len = 1;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      t.kind = Tok::Int;
      auto r = std::from_chars(src.data() + i, src.data() + i + len, t.value);
      if (r.ec != std::errc()) {
        t.span.end = i + len;
        fail(t.span, "syntax", "integer literal out of range");
      }
    } else {
      static const std::vector<std::pair<std::string_view, Tok>> ops = {
          {"<=>", Tok::Iff}, {"->", Tok::Arrow}, {"=>", Tok::Implies}, {"!=", Tok::Neq},
          {"<=", Tok::Le},   {">=", Tok::Ge},    {"/\\", Tok::And},    {"\\/", Tok::Or},
          {"<", Tok::Lt},    {">", Tok::Gt},     {"=", Tok::Eq},       {"(", Tok::LParen},
          {")", Tok::RParen}, {"[", Tok::LBrack}, {"]", Tok::RBrack},  {",", Tok::Comma},
          {";", Tok::Semi},  {":", Tok::Colon},  {"*", Tok::Star},     {"+", Tok::Plus},
          {"-", Tok::Minus}};
      for (const auto& [s, k] : ops) {
        if (src.substr(i, s.size()) == s) {
          len = s.size();
          t.kind = k;
          break;
        }
      }
      if (len == 0) {
        t.span.end = i + 1;
        fail(t.span, "syntax", std::string("unexpected character '") + c + "'");
      }
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    t.span.end = i;
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.span = {line, col, src.size(), src.size()};
  out.push_back(end);
  return out;
}

bool is_section(const Token& t) {
  return t.kind == Tok::Ident && (t.text == "SORTS" || t.text == "SIGNATURE" || t.text == "RULES");
}

// ---------------------------------------------------------------------------
// Untyped syntax tree

struct Ast {
  enum class Kind { Ident, Num, Bool, Call, Op } kind = Kind::Ident;
  std::string name;
  std::int64_t num = 0;
  std::vector<Ast> args;
  SourceSpan span;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) {
      fail(peek().span, "syntax",
           std::string("expected ") + what + ", found " + describe(peek()));
    }
    return take();
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }

  // Skips to just after the next ';' or to the next section keyword.
  void recover() {
    while (!at(Tok::End) && !is_section(peek())) {
      if (take().kind == Tok::Semi) return;
    }
  }

  Ast expr() {
    Ast lhs = disj();
    if (at(Tok::Implies)) {
      take();
      Ast rhs = expr();
      return op("=>", std::move(lhs), std::move(rhs));
    }
    if (at(Tok::Iff)) {
      take();
      Ast rhs = disj();
      if (at(Tok::Iff) || at(Tok::Implies)) {
        fail(peek().span, "syntax", "'<=>' does not associate; add parentheses");
      }
      return op("<=>", std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

 private:
  static Ast op(std::string name, Ast a, Ast b) {
    Ast out;
    out.kind = Ast::Kind::Op;
    out.name = std::move(name);
    out.span = join(a.span, b.span);
    out.args.push_back(std::move(a));
    out.args.push_back(std::move(b));
    return out;
  }

  Ast disj() {
    Ast lhs = conj();
    while (at(Tok::Or)) {
      take();
      lhs = op("\\/", std::move(lhs), conj());
    }
    return lhs;
  }

  Ast conj() {
    Ast lhs = negation();
    while (at(Tok::And)) {
      take();
      lhs = op("/\\", std::move(lhs), negation());
    }
    return lhs;
  }

  Ast negation() {
    if (at_word("not")) {
      Token t = take();
      Ast arg = negation();
      Ast out;
      out.kind = Ast::Kind::Op;
      out.name = "not";
      out.span = join(t.span, arg.span);
      out.args.push_back(std::move(arg));
      return out;
    }
    return comparison();
  }

  static const char* cmp_name(Tok k) {
    switch (k) {
      case Tok::Eq: return "=";
      case Tok::Neq: return "!=";
      case Tok::Le: return "<=";
      case Tok::Lt: return "<";
      case Tok::Ge: return ">=";
      case Tok::Gt: return ">";
      default: return nullptr;
    }
  }

  Ast comparison() {
    Ast lhs = additive();
    if (const char* name = cmp_name(peek().kind)) {
      take();
      Ast rhs = additive();
      if (cmp_name(peek().kind)) {
        fail(peek().span, "syntax", "comparisons do not associate; add parentheses");
      }
      return op(name, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Ast additive() {
    Ast lhs = multiplicative();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      std::string name = take().text;
      lhs = op(name, std::move(lhs), multiplicative());
    }
    return lhs;
  }

  Ast multiplicative() {
    Ast lhs = power();
    while (at(Tok::Star) || at_word("div") || at_word("mod")) {
      std::string name = take().text;
      lhs = op(name, std::move(lhs), power());
    }
    return lhs;
  }

  Ast power() {
    Ast lhs = atom();
    if (at_word("exp")) {
      take();
      return op("exp", std::move(lhs), power());
    }
    return lhs;
  }

  Ast atom() {
    const Token& t = peek();
    Ast out;
    out.span = t.span;
    if (t.kind == Tok::Int) {
      out.kind = Ast::Kind::Num;
      out.num = take().value;
      return out;
    }
    if (t.kind == Tok::LParen) {
      take();
      Ast inner = expr();
      Token close = expect(Tok::RParen, "')'");
      inner.span = join(out.span, close.span);
      return inner;
    }
    if (t.kind != Tok::Ident || is_section(t)) {
      fail(t.span, "syntax", "expected a term, found " + describe(t));
    }
    if (t.text == "true" || t.text == "false") {
      out.kind = Ast::Kind::Bool;
      out.num = t.text == "true";
      take();
      return out;
    }
    if (theory::is_reserved_name(t.text)) {
      fail(t.span, "syntax", "unexpected keyword '" + t.text + "'");
    }
    out.name = take().text;
    if (!at(Tok::LParen)) return out;
    take();
    out.kind = Ast::Kind::Call;
    if (!at(Tok::RParen)) {
      out.args.push_back(expr());
      while (at(Tok::Comma)) {
        take();
        out.args.push_back(expr());
      }
    }
    out.span = join(out.span, expect(Tok::RParen, "')' or ','").span);
    return out;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Sort inference and elaboration into terms

class Elaborator {
 public:
  explicit Elaborator(const Signature& sig) : sig_(sig) {}

  void reset() { env_.clear(); }

  Term elab(const Ast& a, const std::optional<Sort>& expected) {
    Term t = build(a, expected);
    if (expected && !(t.sort() == *expected)) {
      fail(a.span, "sort-mismatch",
           "expected sort " + expected->name() + ", found " + t.sort().name());
    }
    return t;
  }

 private:
  std::optional<Sort> infer(const Ast& a) const {
    switch (a.kind) {
      case Ast::Kind::Num: return Sort::Int();
      case Ast::Kind::Bool: return Sort::Bool();
      case Ast::Kind::Ident: {
        if (auto f = sig_.find(a.name)) return (*f)->result_sort;
        auto it = env_.find(a.name);
        if (it != env_.end()) return it->second;
        return std::nullopt;
      }
      case Ast::Kind::Call: {
        if (auto f = sig_.find(a.name)) return (*f)->result_sort;
        return std::nullopt;
      }
      case Ast::Kind::Op: {
        static const std::set<std::string> ints = {"+", "-", "*", "div", "mod", "exp"};
        return ints.count(a.name) ? Sort::Int() : Sort::Bool();
      }
    }
    return std::nullopt;
  }

  Term build(const Ast& a, const std::optional<Sort>& expected) {
    switch (a.kind) {
      case Ast::Kind::Num: return theory::num(a.num);
      case Ast::Kind::Bool: return theory::boolean(a.num != 0);
      case Ast::Kind::Ident: return ident(a, expected);
      case Ast::Kind::Call: return call(a);
      case Ast::Kind::Op: return oper(a);
    }
    fail(a.span, "syntax", "malformed term");
  }

  Term ident(const Ast& a, const std::optional<Sort>& expected) {
    if (auto f = sig_.find(a.name)) {
      if ((*f)->arity() != 0) {
        fail(a.span, "arity", "symbol '" + a.name + "' expects " +
                                  std::to_string((*f)->arity()) + " argument(s)");
      }
      return Term::apply(*f);
    }
    auto it = env_.find(a.name);
    if (it != env_.end()) {
      if (expected && !(it->second == *expected)) {
        fail(a.span, "sort-mismatch",
             "variable '" + a.name + "' is used at sorts " + it->second.name() + " and " +
                 expected->name());
      }
      return Term::variable(a.name, it->second);
    }
    if (!expected) fail(a.span, "sort-inference", "cannot infer the sort of '" + a.name + "'");
    env_.emplace(a.name, *expected);
    return Term::variable(a.name, *expected);
  }

  Term call(const Ast& a) {
    auto f = sig_.find(a.name);
    if (!f) fail(a.span, "unknown-symbol", "unknown function symbol '" + a.name + "'");
    if ((*f)->arity() != a.args.size()) {
      fail(a.span, "arity", "symbol '" + a.name + "' expects " +
                                std::to_string((*f)->arity()) + " argument(s), got " +
                                std::to_string(a.args.size()));
    }
    std::vector<Term> args;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      args.push_back(elab(a.args[i], (*f)->arg_sorts[i]));
    return Term::apply(*f, std::move(args));
  }

  Term oper(const Ast& a) {
    if (a.name == "=" || a.name == "!=") {
      std::optional<Sort> s = infer(a.args[0]);
      if (!s) s = infer(a.args[1]);
      if (!s) s = Sort::Int();
      if (!s->is_theory()) {
        fail(a.span, "sort-mismatch", "'" + a.name + "' compares theory values, not " + s->name());
      }
      Term l = elab(a.args[0], s);
      Term r = elab(a.args[1], s);
      return a.name == "=" ? theory::mk_eq(l, r) : theory::mk_neq(l, r);
    }
    auto sym = theory::lookup(a.name, a.args.size());
    if (!sym) fail(a.span, "unknown-symbol", "unknown operator '" + a.name + "'");
    std::vector<Term> args;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      args.push_back(elab(a.args[i], (*sym)->arg_sorts[i]));
    return Term::apply(*sym, std::move(args));
  }

  const Signature& sig_;
  std::map<std::string, Sort> env_;
};

Diagnostic from_error(const Error& e, const SourceSpan& span, std::string code) {
  return {Severity::Error, std::move(code), e.what(), span};
}

// First identifier of every RULES item.
std::set<std::string> lhs_roots(const std::vector<Token>& toks) {
  std::set<std::string> out;
  bool in_rules = false, item_start = true;
  for (const auto& t : toks) {
    if (is_section(t)) {
      in_rules = t.text == "RULES";
      item_start = true;
      continue;
    }
    if (in_rules && item_start && t.kind == Tok::Ident) out.insert(t.text);
    item_start = t.kind == Tok::Semi;
  }
  return out;
}

void parse_sort_item(Parser& p, Signature& sig, std::vector<Diagnostic>& diags) {
  do {
    Token name = p.expect(Tok::Ident, "a sort name");
    try {
      sig.declare_sort(name.text);
    } catch (const Error& e) {
      diags.push_back(from_error(e, name.span, "duplicate-declaration"));
    }
  } while (p.at(Tok::Comma) && (p.take(), true));
  p.expect(Tok::Semi, "';'");
}

Sort resolve_sort(const Token& t, const Signature& sig) {
  auto s = sig.find_sort(t.text);
  if (!s) fail(t.span, "unknown-sort", "unknown sort '" + t.text + "'");
  return *s;
}

void parse_signature_item(Parser& p, Signature& sig, const std::set<std::string>& defined,
                          std::vector<Diagnostic>& diags) {
  std::vector<Token> names{p.expect(Tok::Ident, "a symbol name")};
  while (p.at(Tok::Comma)) {
    p.take();
    names.push_back(p.expect(Tok::Ident, "a symbol name"));
  }
  p.expect(Tok::Colon, "':'");
  std::vector<Sort> sorts{resolve_sort(p.expect(Tok::Ident, "a sort"), sig)};
  while (p.at(Tok::Star)) {
    p.take();
    sorts.push_back(resolve_sort(p.expect(Tok::Ident, "a sort"), sig));
  }
  Sort result = sorts.back();
  if (p.at(Tok::Implies)) {
    p.take();
    result = resolve_sort(p.expect(Tok::Ident, "a result sort"), sig);
  } else {
    if (sorts.size() > 1) fail(p.peek().span, "syntax", "expected '=>' and a result sort");
    sorts.clear();
  }
  p.expect(Tok::Semi, "';'");
  for (const auto& n : names) {
    if (theory::is_reserved_name(n.text) || is_section(n)) {
      diags.push_back({Severity::Error, "reserved-name", "'" + n.text + "' is reserved", n.span});
      continue;
    }
    try {
      sig.declare(n.text, sorts, result,
                  defined.count(n.text) ? SymbolKind::Defined : SymbolKind::Constructor);
    } catch (const Error& e) {
      diags.push_back(from_error(e, n.span, "duplicate-declaration"));
    }
  }
}

Rule parse_rule_item(Parser& p, Elaborator& el) {
  SourceSpan start = p.peek().span;
  Ast lhs = p.expr();
  p.expect(Tok::Arrow, "'->'");
  Ast rhs = p.expr();
  std::optional<Ast> guard;
  if (p.at(Tok::LBrack)) {
    p.take();
    guard = p.expr();
    p.expect(Tok::RBrack, "']'");
  }
  Token semi = p.expect(Tok::Semi, "';'");
  SourceSpan span = join(start, semi.span);
  el.reset();
  Term l = el.elab(lhs, std::nullopt);
  Term g = guard ? el.elab(*guard, Sort::Bool()) : theory::top();
  Term r = el.elab(rhs, l.sort());
  try {
    Rule rule = make_rule(l, r, g);
    rule.span = span;
    return rule;
  } catch (const Error& e) {
    throw ParseError{from_error(e, span, "invalid-rule")};
  }
}

ConstrainedTerm parse_pattern_item(Parser& p, Elaborator& el, bool need_semi) {
  Ast term = p.expr();
  std::optional<Ast> guard;
  if (p.at(Tok::LBrack)) {
    p.take();
    guard = p.expr();
    p.expect(Tok::RBrack, "']'");
  }
  if (need_semi) p.expect(Tok::Semi, "';'");
  el.reset();
  Term t = el.elab(term, std::nullopt);
  Term g = guard ? el.elab(*guard, Sort::Bool()) : theory::top();
  return {t, g};
}

template <class F>
auto parse_single(std::string_view text, F&& f) {
  try {
    Parser p(lex(text));
    auto out = f(p);
    if (!p.at(Tok::End)) fail(p.peek().span, "syntax", "unexpected " + Parser::describe(p.peek()));
    return out;
  } catch (const ParseError& e) {
    throw Error(to_string(e.diag));
  }
}

}  // namespace

LctrsParse parse_lctrs(std::string_view text, const std::set<std::string>& extra_defined) {
  LctrsParse out;
  std::vector<Token> toks;
  try {
    toks = lex(text);
  } catch (const ParseError& e) {
    out.diagnostics.push_back(e.diag);
    return out;
  }
  std::set<std::string> defined = lhs_roots(toks);
  defined.insert(extra_defined.begin(), extra_defined.end());
  Lctrs sys;
  Parser p(std::move(toks));
  enum class Section { None, Sorts, Signature, Rules } section = Section::None;
  while (!p.at(Tok::End)) {
    if (is_section(p.peek())) {
      std::string kw = p.take().text;
      section = kw == "SORTS" ? Section::Sorts
                : kw == "SIGNATURE" ? Section::Signature
                                    : Section::Rules;
      continue;
    }
    try {
      switch (section) {
        case Section::None:
          fail(p.peek().span, "syntax", "expected SORTS, SIGNATURE or RULES");
        case Section::Sorts: parse_sort_item(p, sys.signature, out.diagnostics); break;
        case Section::Signature:
          parse_signature_item(p, sys.signature, defined, out.diagnostics);
          break;
        case Section::Rules: {
          Elaborator el(sys.signature);
          sys.rules.push_back(parse_rule_item(p, el));
          break;
        }
      }
    } catch (const ParseError& e) {
      out.diagnostics.push_back(e.diag);
      p.recover();
    }
  }
  if (!has_errors(out.diagnostics)) out.lctrs = std::move(sys);
  return out;
}

PatternParse parse_patterns(std::string_view text, const Signature& sig) {
  PatternParse out;
  std::vector<Token> toks;
  try {
    toks = lex(text);
  } catch (const ParseError& e) {
    out.diagnostics.push_back(e.diag);
    return out;
  }
  Parser p(std::move(toks));
  Elaborator el(sig);
  ConstrainedSet set;
  while (!p.at(Tok::End)) {
    try {
      set.push_back(parse_pattern_item(p, el, true));
    } catch (const ParseError& e) {
      out.diagnostics.push_back(e.diag);
      p.recover();
      if (is_section(p.peek())) p.take();
    }
  }
  if (!has_errors(out.diagnostics)) out.patterns = std::move(set);
  return out;
}

std::set<std::string> pattern_roots(std::string_view text) {
  std::set<std::string> out;
  try {
    bool item_start = true;
    for (const auto& t : lex(text)) {
      if (item_start && t.kind == Tok::Ident) out.insert(t.text);
      item_start = t.kind == Tok::Semi;
    }
  } catch (const ParseError&) {
  }
  return out;
}

Term parse_term(std::string_view text, const Signature& sig) {
  return parse_single(text, [&](Parser& p) {
    Elaborator el(sig);
    return el.elab(p.expr(), std::nullopt);
  });
}

ConstrainedTerm parse_constrained(std::string_view text, const Signature& sig) {
  return parse_single(text, [&](Parser& p) {
    Elaborator el(sig);
    return parse_pattern_item(p, el, false);
  });
}

std::string print_constrained_pattern(const ConstrainedTerm& ct, const Signature* sig) {
  std::set<std::string> reserved;
  if (sig)
    for (const auto& f : sig->user_symbols()) reserved.insert(f->name);
  ConstrainedTerm n = normalized(ct, reserved);
  return to_string(n.term) + " [" + to_string(n.constraint) + "]";
}

std::string print_lctrs(const Lctrs& r) {
  std::ostringstream os;
  os << "SORTS";
  bool any = false;
  for (const auto& s : r.signature.sorts()) {
    if (s.is_theory()) continue;
    os << (any ? ", " : " ") << s.name();
    any = true;
  }
  os << " ;\nSIGNATURE\n";
  for (const auto& f : r.signature.user_symbols()) {
    os << "  " << f->name << " : ";
    for (std::size_t i = 0; i < f->arg_sorts.size(); ++i)
      os << (i ? " * " : "") << f->arg_sorts[i].name();
    if (!f->arg_sorts.empty()) os << " => ";
    os << f->result_sort.name() << " ;\n";
  }
  os << "RULES\n";
  for (const auto& rule : r.rules) os << "  " << to_string(rule) << " ;\n";
  return os.str();
}

namespace {

using nlohmann::ordered_json;

ordered_json pattern_json(const ConstrainedTerm& ct, const Signature* sig, const char* status) {
  std::set<std::string> reserved;
  if (sig)
    for (const auto& f : sig->user_symbols()) reserved.insert(f->name);
  ConstrainedTerm n = normalized(ct, reserved);
  ordered_json j;
  j["term"] = to_string(n.term);
  j["constraint"] = to_string(n.constraint);
  j["status"] = status;
  return j;
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& ds) {
  ordered_json arr = ordered_json::array();
  for (const auto& d : ds) {
    ordered_json j;
    j["severity"] = d.severity == Severity::Error ? "error" : "warning";
    j["code"] = d.code;
    j["message"] = d.message;
    if (d.span) {
      j["line"] = d.span->line;
      j["column"] = d.span->column;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string export_json(const QrVerdict& v, const Signature* sig) {
  ordered_json j;
  j["verdict"] = to_string(v.kind);
  if (v.kind == QrKind::Unknown) j["reason"] = v.reason;
  if (v.kind != QrKind::Unknown || !v.witnesses.empty()) {
    const char* status = v.kind == QrKind::Unknown ? "inconclusive" : "exact";
    ordered_json ws = ordered_json::array();
    for (const auto& w : v.witnesses) ws.push_back(pattern_json(w, sig, status));
    j["witnesses"] = std::move(ws);
  }
  if (!v.diagnostics.empty()) j["diagnostics"] = diagnostics_json(v.diagnostics);
  return j.dump();
}

std::string export_json(const DiffOutcome& d, const Signature* sig) {
  ordered_json j;
  j["verdict"] = to_string(d.status);
  if (!d.exact()) j["reason"] = d.reason;
  const char* status = d.exact() ? "exact" : "inconclusive";
  ordered_json ws = ordered_json::array();
  for (const auto& w : d.result) ws.push_back(pattern_json(w, sig, status));
  j["witnesses"] = std::move(ws);
  return j.dump();
}

}  // namespace lcpat
