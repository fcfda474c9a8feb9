#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "treelex/element.hpp"
#include "treelex/errors.hpp"

namespace treelex {

// AST over l-group semantics. Semiring-mode surface syntax is mapped onto the
// same nodes at parse time (+ becomes join, * becomes add, inv becomes neg,
// the literal 1 becomes the group zero), so evaluation has a single meaning.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Name, Zero, Add, Join, Meet, Neg, Scale };
  Kind kind;
  std::string name;     // Name
  long long factor = 0; // Scale
  ExprPtr lhs, rhs;

  static ExprPtr make_name(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Name;
    e->name = std::move(n);
    return e;
  }
  static ExprPtr make_zero() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Zero;
    return e;
  }
  static ExprPtr make_unary(Kind k, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    return e;
  }
  static ExprPtr make_binary(Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  static ExprPtr make_scale(long long n, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Scale;
    e->factor = n;
    e->lhs = std::move(a);
    return e;
  }
};

enum class ParseMode { LGroup, Semiring };

namespace detail {

struct Token {
  enum class Kind { Name, Int, Plus, Star, Minus, Vee, Caret, LParen, RParen, Inv, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) t += src[i++];
      out.push_back({Token::Kind::Int, t, start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string t;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        t += src[i++];
      if (t == "v")
        out.push_back({Token::Kind::Vee, t, start});
      else if (t == "inv")
        out.push_back({Token::Kind::Inv, t, start});
      else
        out.push_back({Token::Kind::Name, t, start});
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '+': k = Token::Kind::Plus; break;
      case '*': k = Token::Kind::Star; break;
      case '-': k = Token::Kind::Minus; break;
      case '^': k = Token::Kind::Caret; break;
      case '(': k = Token::Kind::LParen; break;
      case ')': k = Token::Kind::RParen; break;
      default:
        fail(Errc::SyntaxError, "unexpected character '" + std::string(1, c) + "' at position " +
                                    std::to_string(i));
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Token::Kind::End, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseMode mode) : toks_(std::move(tokens)), mode_(mode) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    expect(Token::Kind::End, "end of input");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k)
      fail(Errc::SyntaxError, "expected " + what + " at position " + std::to_string(peek().pos));
    ++pos_;
  }
  [[noreturn]] void wrong_mode(const Token& t) {
    fail(Errc::UnknownOperatorInMode,
         "'" + t.text + "' at position " + std::to_string(t.pos) + " is not valid in " +
             (mode_ == ParseMode::LGroup ? std::string("lgroup") : std::string("semiring")) +
             " mode");
  }

  // lgroup:   expr := sum; sum := vee ('+' vee)*; vee := cap ('v' cap)*;
  //           cap := term ('^' term)*; term := INT '*' atom | '-' atom | atom
  // semiring: expr := prod ('+' prod)*; prod := atom ('*' atom)*
  ExprPtr expr() { return mode_ == ParseMode::LGroup ? lg_sum() : sr_sum(); }

  ExprPtr lg_sum() {
    ExprPtr e = lg_vee();
    while (peek().kind == Token::Kind::Plus) {
      take();
      e = Expr::make_binary(Expr::Kind::Add, e, lg_vee());
    }
    return e;
  }
  ExprPtr lg_vee() {
    ExprPtr e = lg_cap();
    while (peek().kind == Token::Kind::Vee) {
      take();
      e = Expr::make_binary(Expr::Kind::Join, e, lg_cap());
    }
    return e;
  }
  ExprPtr lg_cap() {
    ExprPtr e = lg_term();
    while (peek().kind == Token::Kind::Caret) {
      take();
      e = Expr::make_binary(Expr::Kind::Meet, e, lg_term());
    }
    return e;
  }
  ExprPtr lg_term() {
    if (peek().kind == Token::Kind::Minus) {
      take();
      return Expr::make_unary(Expr::Kind::Neg, lg_atom());
    }
    if (peek().kind == Token::Kind::Int && toks_[pos_ + 1].kind == Token::Kind::Star) {
      Token n = take();
      take();  // '*'
      return Expr::make_scale(std::stoll(n.text), lg_atom());
    }
    return lg_atom();
  }
  ExprPtr lg_atom() {
    Token t = take();
    switch (t.kind) {
      case Token::Kind::Name:
        return Expr::make_name(t.text);
      case Token::Kind::Int:
        // Only 0 denotes an element (the group identity).
        if (t.text == "0") return Expr::make_zero();
        fail(Errc::SyntaxError, "integer literal '" + t.text + "' at position " +
                                    std::to_string(t.pos) + " does not denote an element");
      case Token::Kind::LParen: {
        ExprPtr e = expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Inv:
        wrong_mode(t);
      default:
        fail(Errc::SyntaxError, "unexpected '" + t.text + "' at position " + std::to_string(t.pos));
    }
  }

  ExprPtr sr_sum() {
    ExprPtr e = sr_prod();
    while (peek().kind == Token::Kind::Plus) {
      take();
      e = Expr::make_binary(Expr::Kind::Join, e, sr_prod());
    }
    return e;
  }
  ExprPtr sr_prod() {
    ExprPtr e = sr_atom();
    while (peek().kind == Token::Kind::Star) {
      take();
      e = Expr::make_binary(Expr::Kind::Add, e, sr_atom());
    }
    return e;
  }
  ExprPtr sr_atom() {
    Token t = take();
    switch (t.kind) {
      case Token::Kind::Name:
        return Expr::make_name(t.text);
      case Token::Kind::Int:
        // The multiplicative unit 1 is the group zero.
        if (t.text == "1") return Expr::make_zero();
        fail(Errc::SyntaxError, "integer literal '" + t.text + "' at position " +
                                    std::to_string(t.pos) + " does not denote an element");
      case Token::Kind::LParen: {
        ExprPtr e = expr();
        expect(Token::Kind::RParen, "')'");
        return e;
      }
      case Token::Kind::Inv: {
        expect(Token::Kind::LParen, "'(' after inv");
        ExprPtr e = expr();
        expect(Token::Kind::RParen, "')'");
        return Expr::make_unary(Expr::Kind::Neg, e);
      }
      case Token::Kind::Minus:
      case Token::Kind::Vee:
      case Token::Kind::Caret:
        wrong_mode(t);
      default:
        fail(Errc::SyntaxError, "unexpected '" + t.text + "' at position " + std::to_string(t.pos));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseMode mode_;
};

}  // namespace detail

inline ExprPtr parse_expr(const std::string& src, ParseMode mode) {
  if (src.empty()) fail(Errc::SyntaxError, "empty expression");
  return detail::Parser(detail::tokenize(src), mode).parse();
}

// Canonical printer; parse(print(e)) reproduces e in the same mode. Fully
// parenthesized except at the top, which keeps the grammar round trip simple.
inline std::string print_expr(const ExprPtr& e, ParseMode mode) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Name:
      return e->name;
    case K::Zero:
      return mode == ParseMode::LGroup ? "0" : "1";
    case K::Add:
      return "(" + print_expr(e->lhs, mode) + (mode == ParseMode::LGroup ? " + " : " * ") +
             print_expr(e->rhs, mode) + ")";
    case K::Join:
      return "(" + print_expr(e->lhs, mode) + (mode == ParseMode::LGroup ? " v " : " + ") +
             print_expr(e->rhs, mode) + ")";
    case K::Meet:
      if (mode == ParseMode::Semiring)
        // a ^ b = inv(inv(a) + inv(b)); the meet is a derived term there.
        return "inv((inv(" + print_expr(e->lhs, mode) + ") + inv(" + print_expr(e->rhs, mode) +
               ")))";
      return "(" + print_expr(e->lhs, mode) + " ^ " + print_expr(e->rhs, mode) + ")";
    case K::Neg:
      if (mode == ParseMode::Semiring) return "inv(" + print_expr(e->lhs, mode) + ")";
      return "-(" + print_expr(e->lhs, mode) + ")";
    case K::Scale: {
      if (mode == ParseMode::Semiring) fail(Errc::UnknownOperatorInMode, "scale in semiring mode");
      return std::to_string(e->factor) + "*(" + print_expr(e->lhs, mode) + ")";
    }
  }
  fail(Errc::BadInput, "corrupt expression node");
}

inline TlexElement evaluate_expr(const ExprPtr& e, const std::map<std::string, TlexElement>& env,
                                 const ForestPtr& forest) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Name: {
      auto it = env.find(e->name);
      if (it == env.end()) fail(Errc::UnboundName, "'" + e->name + "'");
      return it->second;
    }
    case K::Zero:
      return zero(forest);
    case K::Add:
      return add(evaluate_expr(e->lhs, env, forest), evaluate_expr(e->rhs, env, forest));
    case K::Join:
      return join(evaluate_expr(e->lhs, env, forest), evaluate_expr(e->rhs, env, forest));
    case K::Meet:
      return meet(evaluate_expr(e->lhs, env, forest), evaluate_expr(e->rhs, env, forest));
    case K::Neg:
      return neg(evaluate_expr(e->lhs, env, forest));
    case K::Scale:
      return scale(Int(e->factor), evaluate_expr(e->lhs, env, forest));
  }
  fail(Errc::BadInput, "corrupt expression node");
}

}  // namespace treelex
