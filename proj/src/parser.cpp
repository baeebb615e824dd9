#include "nrb/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "nrb/errors.hpp"

namespace nrb {

namespace {

enum class Tok {
  Ident,
  Int,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Semi,
  Colon,
  Comma,
  Dot,
  DotDot,
  Bar,
  Arrow,
  Plus,
  Star,
  Question,
  Tilde,
  AndAnd,  // conjunction
  OrOr,    // disjunction
  Lt,
  Gt,
  Le,
  Ge,
  Eq,
  Ne,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  SourceSpan span;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto span = [&] { return SourceSpan{"<input>", line, col}; };
  auto push = [&](Tok k, std::string t, size_t len) {
    out.push_back({k, std::move(t), 0, span()});
    i += len;
    col += static_cast<int>(len);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      push(Tok::Ident, text.substr(i, j - i), j - i);
      continue;
    }
    bool neg = c == '-' && i + 1 < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if (std::isdigit(static_cast<unsigned char>(c)) || neg) {
      size_t j = i + (neg ? 1 : 0);
      while (j < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      Token t{Tok::Int, text.substr(i, j - i), 0, span()};
      t.value = std::stoll(t.text);
      out.push_back(t);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = i + 1 < text.size() ? text.substr(i, 2) : std::string{};
    if (two == "->") {
      push(Tok::Arrow, two, 2);
    } else if (two == "..") {
      push(Tok::DotDot, two, 2);
    } else if (two == "/\\") {
      push(Tok::AndAnd, two, 2);
    } else if (two == "\\/") {
      push(Tok::OrOr, two, 2);
    } else if (two == "<=") {
      push(Tok::Le, two, 2);
    } else if (two == ">=") {
      push(Tok::Ge, two, 2);
    } else if (two == "!=") {
      push(Tok::Ne, two, 2);
    } else {
      switch (c) {
        case '{': push(Tok::LBrace, "{", 1); break;
        case '}': push(Tok::RBrace, "}", 1); break;
        case '(': push(Tok::LParen, "(", 1); break;
        case ')': push(Tok::RParen, ")", 1); break;
        case '[': push(Tok::LBracket, "[", 1); break;
        case ']': push(Tok::RBracket, "]", 1); break;
        case ';': push(Tok::Semi, ";", 1); break;
        case ':': push(Tok::Colon, ":", 1); break;
        case ',': push(Tok::Comma, ",", 1); break;
        case '.': push(Tok::Dot, ".", 1); break;
        case '|': push(Tok::Bar, "|", 1); break;
        case '+': push(Tok::Plus, "+", 1); break;
        case '*': push(Tok::Star, "*", 1); break;
        case '?': push(Tok::Question, "?", 1); break;
        case '~': push(Tok::Tilde, "~", 1); break;
        case '<': push(Tok::Lt, "<", 1); break;
        case '>': push(Tok::Gt, ">", 1); break;
        case '=': push(Tok::Eq, "=", 1); break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           span());
      }
    }
  }
  out.push_back({Tok::End, "", 0, span()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Program program() {
    Program p;
    while (at_kw("var")) {
      next();
      VarDecl d;
      d.span = cur().span;
      d.name = expect_ident("variable name");
      expect_kw("in");
      d.low = expect_int();
      expect(Tok::DotDot, "'..'");
      d.high = expect_int();
      expect(Tok::Semi, "';'");
      p.vars.push_back(d);
    }
    while (at_kw("sub")) {
      next();
      std::string name = expect_ident("subroutine name");
      if (p.subs.count(name))
        throw ParseError("duplicate subroutine '" + name + "'", cur().span);
      p.subs[name] = block();
    }
    expect_kw("main");
    p.main = block();
    expect(Tok::End, "end of input");
    return p;
  }

  StmtPtr single_stmt() {
    StmtPtr s = seq();
    expect(Tok::End, "end of input");
    return s;
  }

  ModalPtr formula() {
    ModalPtr m = mform_or();
    expect(Tok::End, "end of input");
    return m;
  }

  BoolPtr boolean() {
    BoolPtr b = bexpr_or();
    expect(Tok::End, "end of input");
    return b;
  }

  Judgement judgement() {
    Judgement j;
    while (at_kw("assume")) {
      next();
      std::string g = expect_ident("'G'");
      if (g != "G") throw ParseError("expected 'G' after 'assume'", cur().span);
      expect(Tok::LParen, "'('");
      std::string label = expect_ident("label");
      expect(Tok::RParen, "')'");
      expect(Tok::Colon, "':'");
      BoolPtr b = non_modal_bexpr("assume");
      expect(Tok::Semi, "';'");
      auto [it, fresh] = j.assumptions.emplace(label, b);
      if (!fresh) it->second = b_or(it->second, b);
    }
    expect_kw("pre");
    expect(Tok::Colon, "':'");
    j.pre = non_modal_bexpr("pre");
    expect(Tok::Semi, "';'");
    if (at_kw("prog")) {
      next();
      expect(Tok::Colon, "':'");
      j.stmt = stmt();
      expect(Tok::Semi, "';'");
    }
    expect_kw("post");
    expect(Tok::Colon, "':'");
    j.post = mform_or();
    expect(Tok::Semi, "';'");
    expect(Tok::End, "end of input");
    return j;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  void next() { ++pos_; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(const std::string& kw) const {
    return cur().kind == Tok::Ident && cur().text == kw;
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::string got = cur().kind == Tok::End ? "end of input"
                                             : "'" + cur().text + "'";
    throw ParseError("expected " + what + ", found " + got, cur().span);
  }
  void expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    next();
  }
  void expect_kw(const std::string& kw) {
    if (!at_kw(kw)) fail("'" + kw + "'");
    next();
  }
  std::string expect_ident(const std::string& what) {
    if (!at(Tok::Ident)) fail(what);
    std::string s = cur().text;
    next();
    return s;
  }
  long long expect_int() {
    if (!at(Tok::Int)) fail("integer");
    long long v = cur().value;
    next();
    return v;
  }

  template <typename F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    size_t save = pos_;
    try {
      return f();
    } catch (const ParseError&) {
      pos_ = save;
      return std::nullopt;
    }
  }

  // --- terms -----------------------------------------------------------

  TermPtr expr() {
    TermPtr t = mul();
    while (at(Tok::Plus)) {
      next();
      t = t_add(t, mul());
    }
    return t;
  }

  TermPtr mul() {
    if (at(Tok::Int) && toks_[pos_ + 1].kind == Tok::Star) {
      long long k = cur().value;
      next();
      next();
      return t_scale(k, mul());
    }
    return expr_primary();
  }

  TermPtr expr_primary() {
    if (at(Tok::Int)) {
      long long v = cur().value;
      next();
      return t_int(v);
    }
    if (at(Tok::Ident)) {
      if (is_keyword(cur().text)) fail("term");
      std::string n = cur().text;
      next();
      return t_var(n);
    }
    if (at(Tok::LParen)) {
      // Either a conditional "(b ? e : e)" or a parenthesised term.
      if (auto cond = attempt([&] {
            next();
            BoolPtr b = bexpr_or();
            expect(Tok::Question, "'?'");
            TermPtr a = expr();
            expect(Tok::Colon, "':'");
            TermPtr c = expr();
            expect(Tok::RParen, "')'");
            return t_cond(b, a, c);
          }))
        return *cond;
      next();
      TermPtr t = expr();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("term");
  }

  // --- boolean terms ---------------------------------------------------

  BoolPtr bexpr_or() {
    BoolPtr b = bexpr_and();
    while (at(Tok::OrOr)) {
      size_t save = pos_;
      next();
      if (auto rhs = attempt([&] { return bexpr_and(); })) {
        b = b_or(b, *rhs);
      } else {
        pos_ = save;
        break;
      }
    }
    return b;
  }

  BoolPtr bexpr_and() {
    BoolPtr b = bexpr_not();
    while (at(Tok::AndAnd)) {
      size_t save = pos_;
      next();
      if (auto rhs = attempt([&] { return bexpr_not(); })) {
        b = b_and(b, *rhs);
      } else {
        pos_ = save;
        break;
      }
    }
    return b;
  }

  BoolPtr bexpr_not() {
    if (at(Tok::Tilde)) {
      next();
      return b_not(bexpr_not());
    }
    return bexpr_primary();
  }

  std::optional<RelOp> rel_op() {
    switch (cur().kind) {
      case Tok::Lt: return RelOp::Lt;
      case Tok::Gt: return RelOp::Gt;
      case Tok::Le: return RelOp::Le;
      case Tok::Ge: return RelOp::Ge;
      case Tok::Eq: return RelOp::Eq;
      case Tok::Ne: return RelOp::Ne;
      default: return std::nullopt;
    }
  }

  BoolPtr relation() {
    TermPtr lhs = expr();
    auto op = rel_op();
    if (!op) fail("relational operator");
    next();
    return b_rel(lhs, *op, expr());
  }

  BoolPtr bexpr_primary() {
    if (at_kw("true")) {
      next();
      return b_true();
    }
    if (at_kw("false")) {
      next();
      return b_false();
    }
    if (at_kw("exists")) {
      next();
      std::string x = expect_ident("bound variable");
      expect(Tok::Dot, "'.'");
      return b_exists(x, bexpr_or());
    }
    if (at(Tok::LParen)) {
      // A relation whose left term is parenthesised, or a grouped bexpr.
      if (auto r = attempt([&] { return relation(); })) return *r;
      next();
      BoolPtr b = bexpr_or();
      expect(Tok::RParen, "')'");
      return b;
    }
    return relation();
  }

  BoolPtr non_modal_bexpr(const std::string& section) {
    size_t save = pos_;
    if (auto b = attempt([&] { return bexpr_or(); })) return *b;
    // Diagnose a modal operator where a plain proposition is required.
    pos_ = save;
    if (attempt([&] { return mform_or(); }))
      throw ParseError("NonModalRequired: modal operator in '" + section +
                           "' section",
                       toks_[save].span);
    pos_ = save;
    return bexpr_or();  // re-raise the original error
  }

  // --- modal formulas --------------------------------------------------

  ModalPtr mform_or() {
    ModalPtr m = mform_and();
    while (at(Tok::OrOr)) {
      next();
      m = m_or(m, mform_and());
    }
    return m;
  }

  ModalPtr mform_and() {
    ModalPtr m = mform_not();
    while (at(Tok::AndAnd)) {
      next();
      m = m_and(m, mform_not());
    }
    return m;
  }

  ModalPtr mform_not() {
    if (at(Tok::Tilde)) {
      next();
      return m_not(mform_not());
    }
    return mform_primary();
  }

  ModalPtr mform_primary() {
    if (at(Tok::Ident)) {
      const std::string& id = cur().text;
      if ((id == "N" || id == "R" || id == "B") &&
          toks_[pos_ + 1].kind == Tok::LBracket) {
        Colour c = id == "N" ? Colour::N() : id == "R" ? Colour::R()
                                                       : Colour::B();
        next();
        next();
        ModalPtr body = mform_or();
        expect(Tok::RBracket, "']'");
        return m_modal(c, body);
      }
      if ((id == "G" || id == "E") && toks_[pos_ + 1].kind == Tok::LParen) {
        bool is_g = id == "G";
        next();
        next();
        std::string tag = expect_ident(is_g ? "label" : "exception kind");
        expect(Tok::RParen, "')'");
        expect(Tok::LBracket, "'['");
        ModalPtr body = mform_or();
        expect(Tok::RBracket, "']'");
        return m_modal(is_g ? Colour::G(tag) : Colour::E(tag), body);
      }
    }
    if (at(Tok::LParen)) {
      // A base relation with parenthesised left term, or a grouped mform.
      if (auto r = attempt([&] { return m_base(relation()); })) return *r;
      next();
      ModalPtr m = mform_or();
      expect(Tok::RParen, "')'");
      return m;
    }
    if (at_kw("true") || at_kw("false") || at_kw("exists") || at(Tok::Tilde))
      return m_base(bexpr_not());
    return m_base(relation());
  }

  // --- statements ------------------------------------------------------

  static bool is_keyword(const std::string& s) {
    static const char* kws[] = {"skip",  "return", "break", "goto", "throw",
                                "do",    "label",  "call",  "try",  "catch",
                                "if",    "else",   "while", "true", "false",
                                "exists"};
    for (const char* k : kws)
      if (s == k) return true;
    return false;
  }

  StmtPtr block() {
    expect(Tok::LBrace, "'{'");
    StmtPtr s = seq();
    expect(Tok::RBrace, "'}'");
    return s;
  }

  StmtPtr seq() {
    StmtPtr acc;
    while (true) {
      // Leading label sugar: "l: Q" labels everything before it (skip at
      // the head of the sequence).
      if (at(Tok::Ident) && !is_keyword(cur().text) &&
          toks_[pos_ + 1].kind == Tok::Colon) {
        std::string lead = cur().text;
        next();
        next();
        acc = s_labelled(acc ? acc : s_skip(), lead);
      }
      // A label declaration scopes over the remainder of the sequence.
      if (at_kw("label")) {
        next();
        std::vector<std::string> labels{expect_ident("label")};
        while (at(Tok::Comma)) {
          next();
          labels.push_back(expect_ident("label"));
        }
        expect(Tok::Dot, "'.'");
        StmtPtr rest = seq();
        for (auto it = labels.rbegin(); it != labels.rend(); ++it)
          rest = s_labeldecl(*it, rest);
        return acc ? s_seq(acc, rest) : rest;
      }
      StmtPtr s = stmt();
      if (at(Tok::Colon) && toks_[pos_ + 1].kind == Tok::Ident) {
        std::string trail = toks_[pos_ + 1].text;
        next();
        next();
        s = s_labelled(s, trail);
      }
      acc = acc ? s_seq(acc, s) : s;
      if (!at(Tok::Semi)) break;
      next();
    }
    return acc;
  }

  StmtPtr stmt() {  // choice level
    StmtPtr s = guarded();
    while (at(Tok::Bar)) {
      next();
      s = s_choice(s, guarded());
    }
    return s;
  }

  StmtPtr guarded() {
    SourceSpan sp = cur().span;
    if (keyword_stmt_ahead()) return stmt_primary();
    // "b -> P" guard, or an assignment "x = e" (a relation with no arrow).
    BoolPtr b = bexpr_or();
    if (at(Tok::Arrow)) {
      next();
      auto s = std::make_shared<Stmt>(Stmt{Stmt::Guard{b, guarded()}, sp});
      return s;
    }
    if (const auto* rel = std::get_if<BoolTerm::Rel>(&b->node)) {
      const auto* v = std::get_if<Term::Var>(&rel->left->node);
      if (v && rel->op == RelOp::Eq) {
        auto s = std::make_shared<Stmt>(
            Stmt{Stmt::Assign{v->name, rel->right}, sp});
        return s;
      }
    }
    throw ParseError("expected '->' after guard condition", cur().span);
  }

  bool keyword_stmt_ahead() const {
    if (at(Tok::LBrace)) return true;
    if (!at(Tok::Ident)) return false;
    const std::string& id = cur().text;
    return id == "skip" || id == "return" || id == "break" || id == "goto" ||
           id == "throw" || id == "do" || id == "label" || id == "call" ||
           id == "try" || id == "if" || id == "while";
  }

  StmtPtr stmt_primary() {
    SourceSpan sp = cur().span;
    auto mk = [&](auto node) {
      return std::make_shared<Stmt>(Stmt{std::move(node), sp});
    };
    if (at(Tok::LBrace)) return block();
    if (at_kw("skip")) {
      next();
      return mk(Stmt::Skip{});
    }
    if (at_kw("return")) {
      next();
      return mk(Stmt::Return{});
    }
    if (at_kw("break")) {
      next();
      return mk(Stmt::Break{});
    }
    if (at_kw("goto")) {
      next();
      return mk(Stmt::Goto{expect_ident("label")});
    }
    if (at_kw("throw")) {
      next();
      return mk(Stmt::Throw{expect_ident("exception kind")});
    }
    if (at_kw("do")) {
      next();
      return mk(Stmt::Do{block()});
    }
    if (at_kw("call")) {
      next();
      return mk(Stmt::Call{expect_ident("subroutine name")});
    }
    if (at_kw("label")) {
      next();
      std::vector<std::string> labels{expect_ident("label")};
      while (at(Tok::Comma)) {
        next();
        labels.push_back(expect_ident("label"));
      }
      expect(Tok::Dot, "'.'");
      StmtPtr body = stmt();
      for (auto it = labels.rbegin(); it != labels.rend(); ++it)
        body = s_labeldecl(*it, body);
      return body;
    }
    if (at_kw("try")) {
      next();
      StmtPtr body = block();
      expect_kw("catch");
      expect(Tok::LParen, "'('");
      std::string kind = expect_ident("exception kind");
      expect(Tok::RParen, "')'");
      return mk(Stmt::TryCatch{body, kind, block()});
    }
    if (at_kw("if")) {
      next();
      expect(Tok::LParen, "'('");
      BoolPtr b = bexpr_or();
      expect(Tok::RParen, "')'");
      StmtPtr then_b = block();
      expect_kw("else");
      StmtPtr else_b = block();
      return s_choice(s_guard(b, then_b), s_guard(b_not(b), else_b));
    }
    if (at_kw("while")) {
      next();
      expect(Tok::LParen, "'('");
      BoolPtr b = bexpr_or();
      expect(Tok::RParen, "')'");
      StmtPtr body = block();
      return s_do(s_choice(s_guard(b_not(b), s_break()), s_guard(b, body)));
    }
    fail("statement");
  }
};

}  // namespace

Program parse_program(const std::string& text) {
  return Parser(text).program();
}

StmtPtr parse_stmt(const std::string& text) {
  return Parser(text).single_stmt();
}

ModalPtr parse_formula(const std::string& text) {
  return Parser(text).formula();
}

BoolPtr parse_bool(const std::string& text) { return Parser(text).boolean(); }

Judgement parse_judgement(const std::string& text) {
  return Parser(text).judgement();
}

}  // namespace nrb
