#ifndef GNLIE_PARSE_HPP
#define GNLIE_PARSE_HPP

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <string>
#include <string_view>

#include "gnlie/expr.hpp"

namespace gnlie {

// Recursive-descent parser for the expression grammar
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?
//   base   := NUMBER | SYMBOL | FUNC '(' expr ')' | '(' expr ')' | '-' base
//
// SYMBOL matches [A-Za-z_][A-Za-z0-9_]*. FUNC is one of sin, cos, tan, sinh,
// cosh, exp, ln, sqrt. A NUMBER containing '.' or an exponent marker is an
// inexact double; a plain digit string is an exact integer (write rationals
// as quotients, e.g. 1/2, to keep them exact).

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), pos_(0) {}

  Expr run() {
    skip_ws();
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected input after expression", "'+', '-', '*', '/', '^' or end of input");
    return e;
  }

 private:
  Expr parse_sum() {
    Expr e = parse_term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        e = Expr::binary(BinaryOp::add, e, parse_term());
      else if (accept('-'))
        e = Expr::binary(BinaryOp::sub, e, parse_term());
      else
        return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      skip_ws();
      if (accept('*'))
        e = Expr::binary(BinaryOp::mul, e, parse_factor());
      else if (accept('/'))
        e = Expr::binary(BinaryOp::div, e, parse_factor());
      else
        return e;
    }
  }

  Expr parse_factor() {
    Expr base = parse_base();
    skip_ws();
    if (accept('^')) return Expr::binary(BinaryOp::pow, base, parse_factor());
    return base;
  }

  Expr parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", base_expected());
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return Expr::unary(UnaryOp::neg, parse_base());
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail(std::string("unexpected character '") + c + "'", base_expected());
    return Expr();  // unreachable
  }

  Expr parse_number() {
    std::size_t start = pos_;
    bool inexact = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      inexact = true;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        inexact = true;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // the 'e' belongs to a following symbol, not this number
      }
    }
    std::string tok(text_.substr(start, pos_ - start));
    if (inexact) return Expr::real(std::strtod(tok.c_str(), nullptr));
    errno = 0;
    long long v = std::strtoll(tok.c_str(), nullptr, 10);
    if (errno == ERANGE) return Expr::real(std::strtod(tok.c_str(), nullptr));
    return Expr::integer(v);
  }

  Expr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    bool call = pos_ < text_.size() && text_[pos_] == '(';
    UnaryOp op;
    if (lookup_func(name, &op)) {
      if (!call)
        throw ParseError("function name '" + name + "' must be followed by '('", start, "'('");
      ++pos_;
      Expr arg = parse_sum();
      expect(')');
      return Expr::unary(op, arg);
    }
    if (call)
      throw ParseError("unknown function '" + name + "'", start,
                       "one of sin, cos, tan, sinh, cosh, exp, ln, sqrt");
    return Expr::symbol(name);
  }

  static bool lookup_func(const std::string& name, UnaryOp* op) {
    struct Entry {
      const char* name;
      UnaryOp op;
    };
    static const Entry table[] = {{"sin", UnaryOp::sin},   {"cos", UnaryOp::cos},
                                  {"tan", UnaryOp::tan},   {"sinh", UnaryOp::sinh},
                                  {"cosh", UnaryOp::cosh}, {"exp", UnaryOp::exp},
                                  {"ln", UnaryOp::ln},     {"sqrt", UnaryOp::sqrt}};
    for (const auto& e : table)
      if (name == e.name) {
        *op = e.op;
        return true;
      }
    return false;
  }

  static const char* base_expected() { return "number, symbol, function, '(' or '-'"; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c)) fail(std::string("expected '") + c + "'", std::string(1, c));
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " (expected " + expected + ")",
                     pos_, expected);
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).run(); }

}  // namespace gnlie

#endif
