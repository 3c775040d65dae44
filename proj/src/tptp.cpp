#include "proofscope/tptp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace proofscope {

namespace fs = std::filesystem;

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Axiom: return "axiom";
    case Role::Hypothesis: return "hypothesis";
    case Role::Definition: return "definition";
    case Role::Lemma: return "lemma";
    case Role::Theorem: return "theorem";
    case Role::Conjecture: return "conjecture";
    case Role::NegatedConjecture: return "negated_conjecture";
  }
  return "axiom";
}

std::optional<Role> parse_role(std::string_view token) {
  static const std::pair<std::string_view, Role> kRoles[] = {
      {"axiom", Role::Axiom},         {"hypothesis", Role::Hypothesis},
      {"definition", Role::Definition}, {"lemma", Role::Lemma},
      {"theorem", Role::Theorem},     {"conjecture", Role::Conjecture},
      {"negated_conjecture", Role::NegatedConjecture},
  };
  for (const auto& [name, role] : kRoles)
    if (name == token) return role;
  return std::nullopt;
}

namespace {

std::string describe(const SourceLocation& w) {
  return w.file + ":" + std::to_string(w.line) + ":" + std::to_string(w.column);
}

}  // namespace

TptpError::TptpError(const std::string& message, SourceLocation where)
    : std::runtime_error(describe(where) + ": " + message), message_(message), where_(std::move(where)) {}

Theory::Theory(std::vector<AnnotatedFormula> formulas, std::string origin) : origin_(std::move(origin)) {
  for (auto& f : formulas) add(std::move(f));
}

void Theory::add(AnnotatedFormula f) {
  if (f.name.empty()) throw TptpError("empty formula name", f.source);
  if (find(f.name)) throw TptpError("duplicate formula name '" + f.name + "'", f.source);
  if (f.role == Role::Conjecture && conjecture())
    throw TptpError("second conjecture '" + f.name + "' (only one is allowed)", f.source);
  formulas_.push_back(std::move(f));
}

const AnnotatedFormula* Theory::find(std::string_view name) const {
  for (const auto& f : formulas_)
    if (f.name == name) return &f;
  return nullptr;
}

const AnnotatedFormula* Theory::conjecture() const {
  for (const auto& f : formulas_)
    if (f.role == Role::Conjecture) return &f;
  return nullptr;
}

std::vector<const AnnotatedFormula*> Theory::premises() const {
  std::vector<const AnnotatedFormula*> out;
  for (const auto& f : formulas_)
    if (f.role != Role::Conjecture) out.push_back(&f);
  return out;
}

std::vector<std::string> Theory::premise_names() const {
  std::vector<std::string> out;
  for (const auto* f : premises()) out.push_back(f->name);
  return out;
}

bool operator==(const Theory& a, const Theory& b) {
  if (a.formulas_.size() != b.formulas_.size()) return false;
  for (std::size_t i = 0; i < a.formulas_.size(); ++i) {
    const auto& x = a.formulas_[i];
    const auto& y = b.formulas_[i];
    if (x.name != y.name || x.role != y.role || !(x.formula == y.formula)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok : std::uint8_t {
  End,
  LowerWord,
  UpperWord,
  DollarWord,
  SingleQuoted,
  DistinctObject,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Not,        // ~
  And,        // &
  Or,         // |
  Implies,    // =>
  RevImplies, // <=
  Iff,        // <=>
  Xor,        // <~>
  Nor,        // ~|
  Nand,       // ~&
  Eq,         // =
  Neq,        // !=
  Forall,     // !
  Exists,     // ?
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation where;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.where = {file_, line_, col_};
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(std::move(t));
        return out;
      }
      lex_one(t);
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) { throw TptpError(msg, {file_, line_, col_}); }

  void skip_space() {
    for (;;) {
      char c = peek();
      if (c == '%') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance(2);
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) fail("unterminated block comment");
        advance(2);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  static bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void lex_one(Token& t) {
    char c = peek();
    auto take = [&](Tok k, std::size_t n) {
      t.kind = k;
      t.text = std::string(src_.substr(pos_, n));
      advance(n);
    };
    if (std::islower(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (word_char(peek(n))) ++n;
      take(std::islower(static_cast<unsigned char>(c)) ? Tok::LowerWord : Tok::UpperWord, n);
      return;
    }
    if (c == '$') {
      std::size_t n = 1;
      if (peek(1) == '$') ++n;
      while (word_char(peek(n))) ++n;
      take(Tok::DollarWord, n);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::size_t n = 1;
      while (std::isalnum(static_cast<unsigned char>(peek(n))) || peek(n) == '.' || peek(n) == '/') {
        if (peek(n) == '.' && !std::isdigit(static_cast<unsigned char>(peek(n + 1)))) break;
        ++n;
      }
      take(Tok::Number, n);
      return;
    }
    if (c == '\'' || c == '"') {
      char quote = c;
      std::string body;
      advance();
      for (;;) {
        if (pos_ >= src_.size()) fail("unterminated quoted token");
        char d = peek();
        if (d == '\\') {
          body += peek(1);
          advance(2);
          continue;
        }
        if (d == quote) {
          advance();
          break;
        }
        body += d;
        advance();
      }
      if (quote == '\'') {
        if (body.empty()) fail("empty single-quoted token");
        t.kind = Tok::SingleQuoted;
        t.text = body;
      } else {
        t.kind = Tok::DistinctObject;
        t.text = "\"" + body + "\"";
      }
      return;
    }
    switch (c) {
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      case '[': return take(Tok::LBracket, 1);
      case ']': return take(Tok::RBracket, 1);
      case ',': return take(Tok::Comma, 1);
      case '.': return take(Tok::Dot, 1);
      case ':': return take(Tok::Colon, 1);
      case '&': return take(Tok::And, 1);
      case '|': return take(Tok::Or, 1);
      case '?': return take(Tok::Exists, 1);
      case '~':
        if (peek(1) == '|') return take(Tok::Nor, 2);
        if (peek(1) == '&') return take(Tok::Nand, 2);
        return take(Tok::Not, 1);
      case '=':
        if (peek(1) == '>') return take(Tok::Implies, 2);
        return take(Tok::Eq, 1);
      case '!':
        if (peek(1) == '=') return take(Tok::Neq, 2);
        return take(Tok::Forall, 1);
      case '<':
        if (peek(1) == '=' && peek(2) == '>') return take(Tok::Iff, 3);
        if (peek(1) == '~' && peek(2) == '>') return take(Tok::Xor, 3);
        if (peek(1) == '=') return take(Tok::RevImplies, 2);
        break;
      default:
        break;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

struct SymbolUse {
  bool predicate = false;
  int arity = 0;
  SourceLocation first;
};

struct ParseState {
  std::vector<fs::path> include_dirs;
  std::vector<AnnotatedFormula> formulas;
  std::map<std::string, SourceLocation> names;
  std::map<std::string, SymbolUse> symbols;
  std::vector<fs::path> include_stack;
  bool conjecture_seen = false;
};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseState& state, std::string origin)
      : toks_(std::move(toks)), st_(state), origin_(std::move(origin)) {}

  void parse_file() {
    while (cur().kind != Tok::End) parse_statement();
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() const { return toks_[std::min(pos_ + 1, toks_.size() - 1)]; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    if (cur().kind == Tok::End) throw TptpError(msg + " (at end of input)", cur().where);
    throw TptpError(msg + " near '" + cur().text + "'", cur().where);
  }

  Token expect(Tok k, const char* what) {
    if (cur().kind != k) fail(std::string("expected ") + what);
    return take();
  }

  bool accept(Tok k) {
    if (cur().kind != k) return false;
    take();
    return true;
  }

  void parse_statement() {
    if (cur().kind != Tok::LowerWord) fail("expected fof, cnf or include");
    Token kw = take();
    if (kw.text == "include") return parse_include(kw);
    if (kw.text == "fof") return parse_annotated(kw, false);
    if (kw.text == "cnf") return parse_annotated(kw, true);
    throw TptpError("unsupported TPTP statement '" + kw.text + "' (only fof, cnf and include)", kw.where);
  }

  void parse_include(const Token& kw) {
    expect(Tok::LParen, "'('");
    Token file = expect(Tok::SingleQuoted, "quoted file name");
    if (cur().kind == Tok::Comma)
      throw TptpError("include with a selection list is not supported", cur().where);
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    fs::path resolved = resolve_include(file.text, kw.where);
    for (const auto& p : st_.include_stack)
      if (p == resolved) throw TptpError("recursive include of " + file.text, file.where);
    std::string text;
    try {
      text = read_text(resolved);
    } catch (const std::runtime_error&) {
      throw TptpError("cannot read include file " + resolved.string(), file.where);
    }
    st_.include_stack.push_back(resolved);
    Lexer lx(text, resolved.string());
    Parser inner(lx.run(), st_, resolved.string());
    inner.parse_file();
    st_.include_stack.pop_back();
  }

  fs::path resolve_include(const std::string& name, const SourceLocation& where) const {
    std::vector<fs::path> search = st_.include_dirs;
    if (origin_ != "<memory>") {
      fs::path parent = fs::path(origin_).parent_path();
      search.push_back(parent.empty() ? fs::path(".") : parent);
    }
    if (const char* env = std::getenv("TPTP"); env && *env) search.emplace_back(env);
    for (const auto& dir : search) {
      fs::path candidate = dir / name;
      std::error_code ec;
      if (fs::is_regular_file(candidate, ec)) return fs::weakly_canonical(candidate);
    }
    throw TptpError("unresolved include '" + name + "'", where);
  }

  std::string parse_name() {
    const Token& t = cur();
    if (t.kind == Tok::LowerWord || t.kind == Tok::SingleQuoted || t.kind == Tok::Number ||
        t.kind == Tok::UpperWord)
      return take().text;
    fail("expected formula name");
  }

  void parse_annotated(const Token& kw, bool cnf) {
    expect(Tok::LParen, "'('");
    SourceLocation name_at = cur().where;
    std::string name = parse_name();
    expect(Tok::Comma, "','");
    Token role_tok = expect(Tok::LowerWord, "formula role");
    auto role = parse_role(role_tok.text);
    if (!role) throw TptpError("unsupported formula role '" + role_tok.text + "'", role_tok.where);
    expect(Tok::Comma, "','");
    bound_.clear();
    Formula f = cnf ? parse_cnf() : parse_fof();
    if (accept(Tok::Comma)) {
      skip_general_term();
      if (accept(Tok::Comma)) skip_general_term();
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");

    if (auto it = st_.names.find(name); it != st_.names.end())
      throw TptpError("duplicate formula name '" + name + "' (first declared at " + describe(it->second) + ")",
                      name_at);
    if (*role == Role::Conjecture) {
      if (st_.conjecture_seen) throw TptpError("second conjecture '" + name + "' (only one is allowed)", name_at);
      st_.conjecture_seen = true;
    }
    st_.names.emplace(name, name_at);
    AnnotatedFormula af;
    af.name = std::move(name);
    af.role = *role;
    af.formula = std::move(f);
    af.source = kw.where;
    st_.formulas.push_back(std::move(af));
  }

  // Annotations: general terms, lists and nested applications. Skipped.
  void skip_general_term() {
    int depth = 0;
    for (;;) {
      Tok k = cur().kind;
      if (k == Tok::End) fail("unterminated annotation");
      if (depth == 0 && (k == Tok::Comma || k == Tok::RParen)) return;
      if (k == Tok::LParen || k == Tok::LBracket) ++depth;
      if (k == Tok::RParen || k == Tok::RBracket) --depth;
      take();
    }
  }

  // fof_formula := unitary (binop unitary | (& unitary)* | (| unitary)*)
  Formula parse_fof() {
    Formula lhs = parse_unitary();
    Tok k = cur().kind;
    if (k == Tok::And || k == Tok::Or) {
      Connective op = k == Tok::And ? Connective::And : Connective::Or;
      while (cur().kind == k) {
        take();
        lhs = Formula::binary(op, lhs, parse_unitary());
      }
      if (is_binop(cur().kind)) fail("mixed connectives need parentheses");
      return lhs;
    }
    if (is_binop(k)) {
      Connective op = to_connective(take().kind);
      Formula rhs = parse_unitary();
      if (is_binop(cur().kind)) fail("non-associative connective needs parentheses");
      return Formula::binary(op, lhs, rhs);
    }
    return lhs;
  }

  static bool is_binop(Tok k) {
    switch (k) {
      case Tok::And: case Tok::Or: case Tok::Implies: case Tok::RevImplies:
      case Tok::Iff: case Tok::Xor: case Tok::Nor: case Tok::Nand:
        return true;
      default:
        return false;
    }
  }

  static Connective to_connective(Tok k) {
    switch (k) {
      case Tok::And: return Connective::And;
      case Tok::Or: return Connective::Or;
      case Tok::Implies: return Connective::Implies;
      case Tok::RevImplies: return Connective::ReverseImplies;
      case Tok::Iff: return Connective::Iff;
      case Tok::Xor: return Connective::Xor;
      case Tok::Nor: return Connective::Nor;
      default: return Connective::Nand;
    }
  }

  Formula parse_unitary() {
    switch (cur().kind) {
      case Tok::LParen: {
        take();
        Formula f = parse_fof();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Not:
        take();
        return Formula::negation(parse_unitary());
      case Tok::Forall:
      case Tok::Exists: {
        Quantifier q = take().kind == Tok::Forall ? Quantifier::Forall : Quantifier::Exists;
        expect(Tok::LBracket, "'['");
        std::vector<std::string> vars;
        do {
          Token v = expect(Tok::UpperWord, "variable");
          if (std::find(vars.begin(), vars.end(), v.text) != vars.end())
            throw TptpError("variable " + v.text + " bound twice by one quantifier", v.where);
          vars.push_back(v.text);
        } while (accept(Tok::Comma));
        expect(Tok::RBracket, "']'");
        expect(Tok::Colon, "':'");
        bound_.insert(bound_.end(), vars.begin(), vars.end());
        Formula body = parse_unitary();
        bound_.resize(bound_.size() - vars.size());
        return Formula::quantified(q, std::move(vars), std::move(body));
      }
      default:
        return parse_atomic();
    }
  }

  Formula parse_atomic() {
    if (cur().kind == Tok::DollarWord && (cur().text == "$true" || cur().text == "$false")) {
      if (next().kind != Tok::Eq && next().kind != Tok::Neq) return Formula::truth(take().text == "$true");
    }
    SourceLocation at = cur().where;
    if (cur().kind == Tok::UpperWord) {
      Term lhs = parse_term();
      return parse_equality_tail(std::move(lhs), at, true);
    }
    std::string functor = parse_functor();
    std::vector<Term> args = parse_args();
    if (cur().kind == Tok::Eq || cur().kind == Tok::Neq) {
      note_symbol(functor, false, static_cast<int>(args.size()), at);
      return parse_equality_tail(Term::function(functor, std::move(args)), at, true);
    }
    note_symbol(functor, true, static_cast<int>(args.size()), at);
    return Formula::atom(std::move(functor), std::move(args));
  }

  Formula parse_equality_tail(Term lhs, const SourceLocation&, bool required) {
    if (cur().kind != Tok::Eq && cur().kind != Tok::Neq) {
      if (required) fail("expected '=' or '!=' after term");
    }
    bool eq = take().kind == Tok::Eq;
    Term rhs = parse_term();
    Formula f = Formula::equality(std::move(lhs), std::move(rhs));
    return eq ? f : Formula::negation(f);
  }

  std::string parse_functor() {
    const Token& t = cur();
    if (t.kind == Tok::LowerWord || t.kind == Tok::SingleQuoted || t.kind == Tok::Number ||
        t.kind == Tok::DistinctObject)
      return take().text;
    if (t.kind == Tok::DollarWord) fail("unsupported defined symbol");
    fail("expected atom or term");
  }

  std::vector<Term> parse_args() {
    std::vector<Term> args;
    if (!accept(Tok::LParen)) return args;
    do {
      args.push_back(parse_term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    return args;
  }

  Term parse_term() {
    if (cur().kind == Tok::UpperWord) {
      Token v = take();
      if (!cnf_mode_ && std::find(bound_.begin(), bound_.end(), v.text) == bound_.end())
        throw TptpError("unbound variable " + v.text, v.where);
      if (cnf_mode_ && std::find(cnf_vars_.begin(), cnf_vars_.end(), v.text) == cnf_vars_.end())
        cnf_vars_.push_back(v.text);
      return Term::variable(v.text);
    }
    SourceLocation at = cur().where;
    std::string functor = parse_functor();
    std::vector<Term> args = parse_args();
    note_symbol(functor, false, static_cast<int>(args.size()), at);
    return Term::function(std::move(functor), std::move(args));
  }

  void note_symbol(const std::string& name, bool predicate, int arity, const SourceLocation& at) {
    auto [it, inserted] = st_.symbols.try_emplace(name, SymbolUse{predicate, arity, at});
    if (inserted) return;
    const SymbolUse& prev = it->second;
    if (prev.predicate != predicate || prev.arity != arity) {
      auto show = [](bool p, int a) { return std::string(p ? "predicate" : "function") + "/" + std::to_string(a); };
      throw TptpError("symbol '" + name + "' used as " + show(predicate, arity) + " but first used as " +
                          show(prev.predicate, prev.arity) + " at " + describe(prev.first),
                      at);
    }
  }

  // cnf_formula := disjunction | '(' disjunction ')'
  Formula parse_cnf() {
    cnf_mode_ = true;
    cnf_vars_.clear();
    bool parens = accept(Tok::LParen);
    Formula f = parse_cnf_literal();
    while (accept(Tok::Or)) f = Formula::binary(Connective::Or, f, parse_cnf_literal());
    if (parens) expect(Tok::RParen, "')'");
    cnf_mode_ = false;
    if (cnf_vars_.empty()) return f;
    return Formula::quantified(Quantifier::Forall, cnf_vars_, f);
  }

  Formula parse_cnf_literal() {
    if (accept(Tok::Not)) return Formula::negation(parse_atomic());
    if (cur().kind == Tok::LParen) {
      take();
      Formula f = parse_cnf_literal();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atomic();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseState& st_;
  std::string origin_;
  std::vector<std::string> bound_;
  bool cnf_mode_ = false;
  std::vector<std::string> cnf_vars_;
};

}  // namespace

Theory parse_problem(std::string_view source, const std::vector<fs::path>& include_dirs,
                     const std::string& origin) {
  ParseState st;
  st.include_dirs = include_dirs;
  if (origin != "<memory>") st.include_stack.push_back(fs::weakly_canonical(fs::path(origin)));
  Lexer lx(source, origin);
  Parser p(lx.run(), st, origin);
  p.parse_file();
  return Theory(std::move(st.formulas), origin);
}

Theory parse_file(const fs::path& path, const std::vector<fs::path>& include_dirs) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const std::runtime_error&) {
    throw TptpError("cannot read problem file", {path.string(), 0, 0});
  }
  return parse_problem(text, include_dirs, path.string());
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

bool is_lower_word(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

std::string render_symbol(const std::string& s) {
  if (is_lower_word(s) || is_number(s) || (s.size() >= 2 && s.front() == '"')) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

bool is_literal_like(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
    case Formula::Kind::Atom:
    case Formula::Kind::Equality:
      return true;
    case Formula::Kind::Negation:
      return is_literal_like(f.body());
    default:
      return false;
  }
}

std::string_view connective_text(Connective c) {
  switch (c) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Implies: return "=>";
    case Connective::ReverseImplies: return "<=";
    case Connective::Iff: return "<=>";
    case Connective::Xor: return "<~>";
    case Connective::Nor: return "~|";
    case Connective::Nand: return "~&";
  }
  return "&";
}

std::string wrap(const Formula& f) {
  std::string s = render_formula(f);
  return is_literal_like(f) ? s : "(" + s + ")";
}

}  // namespace

std::string render_term(const Term& t) {
  if (t.is_variable()) return t.name;
  std::string s = render_symbol(t.name);
  if (t.args.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ",";
    s += render_term(t.args[i]);
  }
  return s + ")";
}

std::string render_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return f.truth_value() ? "$true" : "$false";
    case Formula::Kind::Atom:
      return render_term(Term::function(f.predicate(), f.args()));
    case Formula::Kind::Equality:
      return render_term(f.args()[0]) + " = " + render_term(f.args()[1]);
    case Formula::Kind::Negation:
      if (f.body().kind() == Formula::Kind::Equality)
        return render_term(f.body().args()[0]) + " != " + render_term(f.body().args()[1]);
      return "~ " + wrap(f.body());
    case Formula::Kind::Binary:
      return wrap(f.lhs()) + " " + std::string(connective_text(f.connective())) + " " + wrap(f.rhs());
    case Formula::Kind::Quantified: {
      std::string s = f.quantifier() == Quantifier::Forall ? "! [" : "? [";
      for (std::size_t i = 0; i < f.variables().size(); ++i) {
        if (i) s += ",";
        s += f.variables()[i];
      }
      return s + "] : " + wrap(f.body());
    }
  }
  return "";
}

std::string render_annotated(const AnnotatedFormula& f) {
  return "fof(" + render_symbol(f.name) + ", " + std::string(role_name(f.role)) + ", " +
         render_formula(f.formula) + ").";
}

std::string render_theory(const Theory& t) {
  std::string out;
  for (const auto& f : t.formulas()) {
    out += render_annotated(f);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signature

std::string_view kind_name(SignatureEntry::Kind kind) {
  switch (kind) {
    case SignatureEntry::Kind::Predicate: return "predicate";
    case SignatureEntry::Kind::Function: return "function";
    case SignatureEntry::Kind::Constant: return "constant";
  }
  return "predicate";
}

namespace {

class SignatureCounter {
 public:
  void formula(const Formula& f, const std::string& owner) {
    switch (f.kind()) {
      case Formula::Kind::Constant:
        return;
      case Formula::Kind::Atom:
        note(f.predicate(), SignatureEntry::Kind::Predicate, static_cast<int>(f.args().size()), owner);
        [[fallthrough]];
      case Formula::Kind::Equality:
        for (const auto& a : f.args()) term(a, owner);
        return;
      case Formula::Kind::Negation:
      case Formula::Kind::Quantified:
        formula(f.body(), owner);
        return;
      case Formula::Kind::Binary:
        formula(f.lhs(), owner);
        formula(f.rhs(), owner);
        return;
    }
  }

  std::vector<SignatureEntry> result() const {
    std::vector<SignatureEntry> out;
    for (const auto& [_, e] : entries_) out.push_back(e);
    return out;
  }

 private:
  void term(const Term& t, const std::string& owner) {
    if (t.is_variable()) return;
    note(t.name, t.args.empty() ? SignatureEntry::Kind::Constant : SignatureEntry::Kind::Function,
         static_cast<int>(t.args.size()), owner);
    for (const auto& a : t.args) term(a, owner);
  }

  void note(const std::string& symbol, SignatureEntry::Kind kind, int arity, const std::string& owner) {
    auto& e = entries_[symbol];
    if (e.occurrence_count == 0) {
      e.symbol = symbol;
      e.kind = kind;
      e.arity = arity;
    }
    ++e.occurrence_count;
    if (std::find(e.occurring_in.begin(), e.occurring_in.end(), owner) == e.occurring_in.end())
      e.occurring_in.push_back(owner);
  }

  std::map<std::string, SignatureEntry> entries_;
};

}  // namespace

std::vector<SignatureEntry> signature_of(const Theory& t) {
  SignatureCounter counter;
  for (const auto& f : t.formulas()) counter.formula(f.formula, f.name);
  return counter.result();
}

std::vector<SignatureEntry> hapax_legomena(const Theory& t) {
  std::vector<SignatureEntry> out;
  for (auto& e : signature_of(t))
    if (e.occurrence_count == 1) out.push_back(std::move(e));
  return out;
}

}  // namespace proofscope
