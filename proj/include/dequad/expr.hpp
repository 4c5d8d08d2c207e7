#pragma once

// Arithmetic expressions in one variable `x`, for integrands and BVP
// coefficients given on the command line.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//
// '^' is right-associative and binds tighter than unary minus, so -2^2 = -4.
// `log` is the natural logarithm. Domain errors evaluate to NaN.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dequad/errors.hpp"

namespace dequad::expr {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& message)
      : Error("syntax error at " + std::to_string(pos) + ": " + message), pos_(pos) {}
  std::size_t pos() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t pos)
      : Error("unknown identifier '" + name + "' at " + std::to_string(pos)),
        name_(std::move(name)), pos_(pos) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t pos() const noexcept { return pos_; }

 private:
  std::string name_;
  std::size_t pos_;
};

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Kind kind;
  std::string_view lexeme;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  using K = Token::Kind;
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
      while (i < src.size() && is_digit(src[i])) ++i;
      if (i < src.size() && src[i] == '.') {
        ++i;
        while (i < src.size() && is_digit(src[i])) ++i;
      }
      // Exponent only when digits follow; "2e" stays 2 followed by ident e.
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && is_digit(src[j])) {
          i = j;
          while (i < src.size() && is_digit(src[i])) ++i;
        }
      }
      out.push_back({K::Number, src.substr(start, i - start), start});
      continue;
    }
    if (is_alpha(c)) {
      while (i < src.size() && (is_alpha(src[i]) || is_digit(src[i]))) ++i;
      out.push_back({K::Ident, src.substr(start, i - start), start});
      continue;
    }
    K kind;
    switch (c) {
      case '+': kind = K::Plus; break;
      case '-': kind = K::Minus; break;
      case '*': kind = K::Star; break;
      case '/': kind = K::Slash; break;
      case '^': kind = K::Caret; break;
      case '(': kind = K::LParen; break;
      case ')': kind = K::RParen; break;
      case ',': kind = K::Comma; break;
      default: throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, src.substr(i, 1), i});
    ++i;
  }
  out.push_back({K::End, {}, src.size()});
  return out;
}

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs, Atan };

inline bool lookup_function(std::string_view name, Func& f) {
  static constexpr std::pair<std::string_view, Func> table[] = {
      {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},   {"sinh", Func::Sinh},
      {"cosh", Func::Cosh}, {"tanh", Func::Tanh}, {"exp", Func::Exp},   {"log", Func::Log},
      {"sqrt", Func::Sqrt}, {"abs", Func::Abs},   {"atan", Func::Atan},
  };
  for (const auto& [n, fn] : table)
    if (n == name) {
      f = fn;
      return true;
    }
  return false;
}

// Flat, immutable expression tree; nodes refer to children by index.
class Ast {
 public:
  enum class Kind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

  struct Node {
    Kind kind;
    double value = 0.0;  // Constant
    Func func = Func::Sin;  // Call
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
  };

  const Node& root() const { return nodes_[static_cast<std::size_t>(root_)]; }
  const Node& at(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size() const noexcept { return nodes_.size(); }

  double eval(double x) const { return eval_node(root_, x); }
  double operator()(double x) const { return eval(x); }

 private:
  friend class Parser;

  std::int32_t add(Node n) {
    nodes_.push_back(n);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  double eval_node(std::int32_t i, double x) const {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case Kind::Constant: return n.value;
      case Kind::Variable: return x;
      case Kind::Negate: return -eval_node(n.lhs, x);
      case Kind::Add: return eval_node(n.lhs, x) + eval_node(n.rhs, x);
      case Kind::Sub: return eval_node(n.lhs, x) - eval_node(n.rhs, x);
      case Kind::Mul: return eval_node(n.lhs, x) * eval_node(n.rhs, x);
      case Kind::Div: return eval_node(n.lhs, x) / eval_node(n.rhs, x);
      case Kind::Pow: {
        const double base = eval_node(n.lhs, x);
        const double ex = eval_node(n.rhs, x);
        if (base == 0.0 && ex < 0.0) return std::numeric_limits<double>::quiet_NaN();
        return std::pow(base, ex);
      }
      case Kind::Call: return apply(n.func, eval_node(n.lhs, x));
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

  static double apply(Func f, double v) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    switch (f) {
      case Func::Sin: return std::sin(v);
      case Func::Cos: return std::cos(v);
      case Func::Tan: return std::tan(v);
      case Func::Sinh: return std::sinh(v);
      case Func::Cosh: return std::cosh(v);
      case Func::Tanh: return std::tanh(v);
      case Func::Exp: return std::exp(v);
      case Func::Log: return v > 0.0 ? std::log(v) : nan;
      case Func::Sqrt: return v >= 0.0 ? std::sqrt(v) : nan;
      case Func::Abs: return std::abs(v);
      case Func::Atan: return std::atan(v);
    }
    return nan;
  }

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(tokenize(src)) {}

  Ast parse() {
    if (toks_.front().kind == Token::Kind::End) throw SyntaxError(0, "empty expression");
    ast_.root_ = expr();
    if (peek().kind != Token::Kind::End) throw SyntaxError(peek().pos, "unexpected trailing input");
    return std::move(ast_);
  }

 private:
  using K = Token::Kind;
  using AK = Ast::Kind;

  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool accept(K k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  void expect(K k, const char* what) {
    if (!accept(k)) throw SyntaxError(peek().pos, std::string("expected ") + what);
  }

  std::int32_t binary(AK kind, std::int32_t l, std::int32_t r) {
    return ast_.add({kind, 0.0, Func::Sin, l, r});
  }

  std::int32_t expr() {
    std::int32_t l = term();
    for (;;) {
      if (accept(K::Plus)) l = binary(AK::Add, l, term());
      else if (accept(K::Minus)) l = binary(AK::Sub, l, term());
      else return l;
    }
  }

  std::int32_t term() {
    std::int32_t l = unary();
    for (;;) {
      if (accept(K::Star)) l = binary(AK::Mul, l, unary());
      else if (accept(K::Slash)) l = binary(AK::Div, l, unary());
      else return l;
    }
  }

  std::int32_t unary() {
    if (accept(K::Minus)) return ast_.add({AK::Negate, 0.0, Func::Sin, unary(), -1});
    if (accept(K::Plus)) return unary();
    return power();
  }

  std::int32_t power() {
    const std::int32_t base = atom();
    if (accept(K::Caret)) return binary(AK::Pow, base, unary());
    return base;
  }

  std::int32_t atom() {
    const Token t = peek();
    switch (t.kind) {
      case K::Number: {
        next();
        double v = 0.0;
        const auto* first = t.lexeme.data();
        const auto* last = first + t.lexeme.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) throw SyntaxError(t.pos, "malformed number");
        return ast_.add({AK::Constant, v});
      }
      case K::Ident: {
        next();
        if (t.lexeme == "x") return ast_.add({AK::Variable});
        if (t.lexeme == "pi") return ast_.add({AK::Constant, std::numbers::pi});
        if (t.lexeme == "e") return ast_.add({AK::Constant, std::numbers::e});
        Func f;
        if (!lookup_function(t.lexeme, f)) throw UnknownIdentifier(std::string(t.lexeme), t.pos);
        expect(K::LParen, "'(' after function name");
        const std::int32_t arg = expr();
        if (peek().kind == K::Comma) throw SyntaxError(peek().pos, "functions take one argument");
        expect(K::RParen, "')'");
        return ast_.add({AK::Call, 0.0, f, arg, -1});
      }
      case K::LParen: {
        next();
        const std::int32_t inner = expr();
        expect(K::RParen, "')'");
        return inner;
      }
      case K::End: throw SyntaxError(t.pos, "unexpected end of input");
      default: throw SyntaxError(t.pos, "unexpected '" + std::string(t.lexeme) + "'");
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Ast ast_;
};

inline Ast parse(std::string_view src) { return Parser(src).parse(); }

}  // namespace dequad::expr
