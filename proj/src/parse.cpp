#include "iled/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "iled/errors.hpp"

namespace iled {

namespace {

enum class Tok { Ident, Var, Int, LParen, RParen, Comma, Period, If, Not, Plus, Minus, Hash, AnnotationMark, End };

struct Token {
  Tok kind;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw DataError("parse error at line " + std::to_string(tok_.line) + ", column " +
                    std::to_string(tok_.col) + ": " + msg);
  }

 private:
  void advance() {
    skip_ws_and_comments();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (c == '(') { single(Tok::LParen, c); return; }
    if (c == ')') { single(Tok::RParen, c); return; }
    if (c == ',') { single(Tok::Comma, c); return; }
    if (c == '.') { single(Tok::Period, c); return; }
    if (c == '+') { single(Tok::Plus, c); return; }
    if (c == '-') { single(Tok::Minus, c); return; }
    if (c == '#') { single(Tok::Hash, c); return; }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      tok_ = {Tok::If, ":-", line_, col_};
      bump();
      bump();
      return;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        bump();
      }
      tok_ = {Tok::Int, s, line_, col_};
      return;
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        s += text_[pos_];
        bump();
      }
      if (s == "not") {
        tok_ = {Tok::Not, s, line_, col_};
      } else if (isupper(static_cast<unsigned char>(s[0])) || s[0] == '_') {
        tok_ = {Tok::Var, s, line_, col_};
      } else {
        tok_ = {Tok::Ident, s, line_, col_};
      }
      return;
    }
    tok_ = {Tok::End, std::string(1, c), line_, col_};
    throw DataError("parse error at line " + std::to_string(line_) + ", column " +
                    std::to_string(col_) + ": unexpected character '" + std::string(1, c) + "'");
  }

  void single(Tok k, char c) {
    tok_ = {k, std::string(1, c), line_, col_};
    bump();
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
        continue;
      }
      if (c == '%') {
        // `%% annotation` is a section marker, not a comment
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '%') {
          size_t p = pos_ + 2;
          while (p < text_.size() && (text_[p] == ' ' || text_[p] == '\t')) ++p;
          if (text_.compare(p, 10, "annotation") == 0) {
            tok_ = {Tok::AnnotationMark, "%% annotation", line_, col_};
            while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            marker_pending_ = true;
            return;
          }
        }
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
  bool marker_pending_ = false;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  bool at_end() { return lex_.peek().kind == Tok::End; }
  bool at_annotation_mark() { return lex_.peek().kind == Tok::AnnotationMark; }
  void skip_annotation_mark() { lex_.take(); }

  Term term() {
    Term t = primary_term();
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      Term rhs = primary_term();
      t = Term::compound("plus", {t, rhs});
    }
    return t;
  }

  // literal := ['not'] atom
  Literal literal() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Not) {
      lex_.take();
      neg = true;
    }
    return Literal(term(), neg);
  }

  Clause clause() {
    Term head = term();
    Clause c(std::move(head));
    if (lex_.peek().kind == Tok::If) {
      lex_.take();
      c.body.push_back(literal());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        c.body.push_back(literal());
      }
    }
    expect(Tok::Period, "expected '.'");
    return c;
  }

  // A top-level statement in a window file: either a clause-shaped fact or
  // an explicitly negated fact.
  std::pair<Literal, bool> window_statement() {
    if (lex_.peek().kind == Tok::Not) {
      lex_.take();
      Term a = term();
      expect(Tok::Period, "expected '.'");
      return {Literal(std::move(a), true), true};
    }
    Term a = term();
    expect(Tok::Period, "expected '.'");
    return {Literal(std::move(a), false), true};
  }

  Schema schema() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Plus || t.kind == Tok::Minus || t.kind == Tok::Hash) {
      Tok k = lex_.take().kind;
      Token ty = lex_.take();
      if (ty.kind != Tok::Ident) lex_.fail("expected type name after placemarker");
      if (k == Tok::Plus) return Schema::input(ty.text);
      if (k == Tok::Minus) return Schema::output(ty.text);
      return Schema::ground(ty.text);
    }
    if (t.kind != Tok::Ident) lex_.fail("expected schema functor or placemarker");
    std::string functor = lex_.take().text;
    std::vector<Schema> args;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      args.push_back(schema());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(schema());
      }
      expect(Tok::RParen, "expected ')'");
    }
    return Schema::structure(std::move(functor), std::move(args));
  }

  void expect(Tok k, const std::string& msg) {
    if (lex_.peek().kind != k) lex_.fail(msg + ", got '" + lex_.peek().text + "'");
    lex_.take();
  }

  Token take() { return lex_.take(); }
  const Token& peek() { return lex_.peek(); }
  [[noreturn]] void fail(const std::string& m) { lex_.fail(m); }

 private:
  Term primary_term() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Var) return Term::var(lex_.take().text);
    if (t.kind == Tok::Int) return Term::constant(lex_.take().text);
    if (t.kind == Tok::Minus) {
      lex_.take();
      Token n = lex_.take();
      if (n.kind != Tok::Int) lex_.fail("expected integer after '-'");
      return Term::constant("-" + n.text);
    }
    if (t.kind != Tok::Ident) lex_.fail("expected term, got '" + t.text + "'");
    std::string functor = lex_.take().text;
    if (lex_.peek().kind != Tok::LParen) return Term::constant(std::move(functor));
    lex_.take();
    std::vector<Term> args;
    args.push_back(term());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      args.push_back(term());
    }
    expect(Tok::RParen, "expected ')'");
    return Term::compound(std::move(functor), std::move(args));
  }

  Lexer lex_;
};

FluentSignature signature_from_term(const Term& t, Parser& p) {
  FluentSignature sig;
  if (!t.is_compound()) {
    sig.functor = t.symbol();
    return sig;
  }
  sig.functor = t.symbol();
  for (const Term& a : t.args()) {
    if (!a.is_const()) p.fail("inertial declaration arguments must be type names");
    sig.arg_types.push_back(a.symbol());
  }
  return sig;
}

// Inertial signatures derived from modeh schemas: the fluent argument of
// initiatedAt/terminatedAt head schemas.
void derive_inertial(const LanguageConfig& cfg, std::set<FluentSignature>& out) {
  for (const ModeDeclaration& m : cfg.modes) {
    if (!m.head) continue;
    const Schema& s = m.schema;
    if (s.kind != Schema::Kind::Struct) continue;
    if ((s.symbol != "initiatedAt" && s.symbol != "terminatedAt") || s.args.size() != 2) continue;
    const Schema& fl = s.args[0];
    if (fl.kind != Schema::Kind::Struct) continue;
    FluentSignature sig;
    sig.functor = fl.symbol;
    bool ok = true;
    for (const Schema& a : fl.args) {
      if (!a.placemarker()) ok = false;
      sig.arg_types.push_back(a.symbol);
    }
    if (ok) out.insert(sig);
  }
}

}  // namespace

Term parse_term(const std::string& text) {
  Parser p(text);
  Term t = p.term();
  return t;
}

Clause parse_clause(const std::string& text) {
  Parser p(text);
  return p.clause();
}

Program parse_program(const std::string& text) {
  Parser p(text);
  Program prog;
  while (!p.at_end()) prog.add(p.clause());
  return prog;
}

ModeFile parse_modes(const std::string& text) {
  Parser p(text);
  ModeFile out;
  while (!p.at_end()) {
    Token t = p.take();
    if (t.kind != Tok::Ident) p.fail("expected declaration");
    if (t.text == "modeh" || t.text == "modeb") {
      p.expect(Tok::LParen, "expected '('");
      bool negated = false;
      if (p.peek().kind == Tok::Not) {
        p.take();
        negated = true;  // tolerated; matching is polarity-agnostic
      }
      (void)negated;
      ModeDeclaration m;
      m.head = (t.text == "modeh");
      m.schema = p.schema();
      p.expect(Tok::RParen, "expected ')'");
      p.expect(Tok::Period, "expected '.'");
      out.config.modes.push_back(std::move(m));
    } else if (t.text == "inertial") {
      p.expect(Tok::LParen, "expected '('");
      Term sig = p.term();
      p.expect(Tok::RParen, "expected ')'");
      p.expect(Tok::Period, "expected '.'");
      out.inertial.insert(signature_from_term(sig, p));
    } else if (t.text == "depth") {
      p.expect(Tok::LParen, "expected '('");
      Token n = p.take();
      if (n.kind != Tok::Int) p.fail("expected integer depth");
      p.expect(Tok::RParen, "expected ')'");
      p.expect(Tok::Period, "expected '.'");
      out.config.depth_bound = std::stoi(n.text);
    } else if (t.text == "domain") {
      p.expect(Tok::LParen, "expected '('");
      Token ty = p.take();
      if (ty.kind != Tok::Ident) p.fail("expected type name");
      p.expect(Tok::Comma, "expected ','");
      Term c = p.term();
      p.expect(Tok::RParen, "expected ')'");
      p.expect(Tok::Period, "expected '.'");
      out.config.type_domains[ty.text].insert(c);
    } else {
      p.fail("unknown declaration '" + t.text + "'");
    }
  }
  derive_inertial(out.config, out.inertial);
  return out;
}

BackgroundFile parse_background(const std::string& text) {
  Parser p(text);
  BackgroundFile out;
  while (!p.at_end()) {
    if (p.peek().kind == Tok::Ident && p.peek().text == "inertial") {
      p.take();
      p.expect(Tok::LParen, "expected '('");
      Term sig = p.term();
      p.expect(Tok::RParen, "expected ')'");
      p.expect(Tok::Period, "expected '.'");
      out.inertial.insert(signature_from_term(sig, p));
      continue;
    }
    out.user_rules.add(p.clause());
  }
  return out;
}

std::vector<Window> parse_windows(const std::string& text) {
  Parser p(text);
  std::vector<Window> out;
  while (!p.at_end()) {
    if (!(p.peek().kind == Tok::Ident && p.peek().text == "window"))
      p.fail("expected 'window <id> <t0> <t1>.' header");
    p.take();
    Window w;
    Token id = p.take();
    if (id.kind != Tok::Int) p.fail("expected window id");
    w.id = std::stoll(id.text);
    Token t0 = p.take();
    if (t0.kind != Tok::Int) p.fail("expected window start time");
    w.t_start = std::stoll(t0.text);
    Token t1 = p.take();
    if (t1.kind != Tok::Int) p.fail("expected window end time");
    w.t_end = std::stoll(t1.text);
    p.expect(Tok::Period, "expected '.'");

    bool in_annotation = false;
    while (!p.at_end() && !(p.peek().kind == Tok::Ident && p.peek().text == "window")) {
      if (p.at_annotation_mark()) {
        p.skip_annotation_mark();
        in_annotation = true;
        continue;
      }
      auto [lit, ok] = p.window_statement();
      (void)ok;
      if (!lit.atom.ground()) p.fail("window facts must be ground: " + lit.atom.str());
      if (!in_annotation) {
        if (lit.negated)
          w.narrative_neg.push_back(lit.atom);
        else
          w.narrative.push_back(lit.atom);
      } else {
        if (lit.atom.symbol() != "holdsAt" || lit.atom.arity() != 2)
          p.fail("annotation must contain holdsAt/2 atoms: " + lit.atom.str());
        auto t = lit.atom.args()[1].as_int();
        if (!t) p.fail("annotation timestamp must be an integer: " + lit.atom.str());
        // Explicit negative annotation rows are redundant under the closed
        // world and are dropped after a consistency check.
        if (lit.negated) {
          if (w.annotation.count({lit.atom.args()[0], *t}))
            throw DataError("window " + std::to_string(w.id) + ": contradictory annotation for " +
                            lit.atom.str());
          continue;
        }
        w.annotation.insert({lit.atom.args()[0], *t});
      }
    }
    w.reindex();
    out.push_back(std::move(w));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
}

}  // namespace iled
