#ifndef GNLIE_EVAL_HPP
#define GNLIE_EVAL_HPP

#include <cmath>

#include "gnlie/expr.hpp"

namespace gnlie {

namespace detail {

[[noreturn]] inline void eval_fail(const Expr& e, const std::string& what) {
  throw EvalError(what + " in '" + to_string(e) + "'", to_string(e));
}

inline bool integral_value(double v) { return std::nearbyint(v) == v && std::isfinite(v); }

}  // namespace detail

/// IEEE double evaluation. Throws EvalError on unbound symbols and domain
/// violations (ln of a nonpositive value, sqrt of a negative value, division
/// by zero, negative base with fractional exponent).
inline double evaluate(const Expr& e, const PointBinding& p) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::number:
      return n.num.value();
    case ExprNode::Kind::symbol: {
      const double* v = p.find(n.sym);
      if (!v) detail::eval_fail(e, "unbound symbol '" + SymbolTable::name_of(n.sym) + "'");
      return *v;
    }
    case ExprNode::Kind::unary: {
      double a = evaluate(n.a, p);
      switch (n.uop) {
        case UnaryOp::neg: return -a;
        case UnaryOp::sin: return std::sin(a);
        case UnaryOp::cos: return std::cos(a);
        case UnaryOp::tan: return std::tan(a);
        case UnaryOp::sinh: return std::sinh(a);
        case UnaryOp::cosh: return std::cosh(a);
        case UnaryOp::exp: return std::exp(a);
        case UnaryOp::ln:
          if (a <= 0.0) detail::eval_fail(e, "ln of nonpositive value");
          return std::log(a);
        case UnaryOp::sqrt:
          if (a < 0.0) detail::eval_fail(e, "sqrt of negative value");
          return std::sqrt(a);
      }
      break;
    }
    case ExprNode::Kind::binary: {
      double a = evaluate(n.a, p);
      double b = evaluate(n.b, p);
      switch (n.bop) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div:
          if (b == 0.0) detail::eval_fail(e, "division by zero");
          return a / b;
        case BinaryOp::pow:
          if (a == 0.0 && b == 0.0) return 1.0;
          if (a == 0.0 && b < 0.0) detail::eval_fail(e, "zero base with negative exponent");
          if (a < 0.0 && !detail::integral_value(b))
            detail::eval_fail(e, "negative base with fractional exponent");
          return std::pow(a, b);
      }
      break;
    }
  }
  detail::eval_fail(e, "malformed expression node");
}

}  // namespace gnlie

#endif
