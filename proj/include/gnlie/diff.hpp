#ifndef GNLIE_DIFF_HPP
#define GNLIE_DIFF_HPP

#include "gnlie/simplify.hpp"

namespace gnlie {

/// Exact symbolic partial derivative with respect to one coordinate symbol.
/// Results are built through the simplifying constructors, so vanishing
/// branches fold away immediately. A power with a constant exponent uses the
/// power rule; a general f^g goes through exp(g*ln f), which narrows the
/// domain to f > 0 (documented restriction).
inline Expr differentiate(const Expr& e, int sym) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::number:
      return Expr::integer(0);
    case ExprNode::Kind::symbol:
      return Expr::integer(n.sym == sym ? 1 : 0);
    case ExprNode::Kind::unary: {
      Expr da = differentiate(n.a, sym);
      if (is_zero(da)) return da;
      switch (n.uop) {
        case UnaryOp::neg: return ex_neg(da);
        case UnaryOp::sin: return ex_mul(ex_fn(UnaryOp::cos, n.a), da);
        case UnaryOp::cos: return ex_neg(ex_mul(ex_fn(UnaryOp::sin, n.a), da));
        case UnaryOp::tan:
          return ex_div(da, ex_pow(ex_fn(UnaryOp::cos, n.a), Expr::integer(2)));
        case UnaryOp::sinh: return ex_mul(ex_fn(UnaryOp::cosh, n.a), da);
        case UnaryOp::cosh: return ex_mul(ex_fn(UnaryOp::sinh, n.a), da);
        case UnaryOp::exp: return ex_mul(ex_fn(UnaryOp::exp, n.a), da);
        case UnaryOp::ln: return ex_div(da, n.a);
        case UnaryOp::sqrt:
          return ex_div(da, ex_mul(Expr::integer(2), ex_fn(UnaryOp::sqrt, n.a)));
      }
      break;
    }
    case ExprNode::Kind::binary: {
      switch (n.bop) {
        case BinaryOp::add: return ex_add(differentiate(n.a, sym), differentiate(n.b, sym));
        case BinaryOp::sub: return ex_sub(differentiate(n.a, sym), differentiate(n.b, sym));
        case BinaryOp::mul:
          return ex_add(ex_mul(differentiate(n.a, sym), n.b),
                        ex_mul(n.a, differentiate(n.b, sym)));
        case BinaryOp::div:
          return ex_div(ex_sub(ex_mul(differentiate(n.a, sym), n.b),
                               ex_mul(n.a, differentiate(n.b, sym))),
                        ex_pow(n.b, Expr::integer(2)));
        case BinaryOp::pow: {
          if (is_number(n.b)) {
            // d(f^c) = c f^(c-1) f'
            const Number& c = n.b.node().num;
            Expr fprime = differentiate(n.a, sym);
            if (is_zero(fprime)) return fprime;
            return ex_mul(ex_mul(Expr::number(c), ex_pow(n.a, Expr::number(c - Number::integer(1)))),
                          fprime);
          }
          // f^g = exp(g ln f):  (f^g)' = f^g (g' ln f + g f'/f)
          Expr fprime = differentiate(n.a, sym);
          Expr gprime = differentiate(n.b, sym);
          Expr inner = ex_add(ex_mul(gprime, ex_fn(UnaryOp::ln, n.a)),
                              ex_mul(n.b, ex_div(fprime, n.a)));
          return ex_mul(e, inner);
        }
      }
      break;
    }
  }
  return Expr::integer(0);
}

inline Expr differentiate(const Expr& e, const std::string& symbol_name) {
  return differentiate(e, SymbolTable::id_of(symbol_name));
}

}  // namespace gnlie

#endif
