#ifndef GNLIE_SIMPLIFY_HPP
#define GNLIE_SIMPLIFY_HPP

#include <cmath>

#include "gnlie/expr.hpp"

namespace gnlie {

// Smart constructors. Each one returns a fully simplified node provided its
// operands are already simplified, which makes the bottom-up pass idempotent
// by construction. The rule set is deliberately weak: constant folding, 0/1
// identities, x-x, double negation. No trig identities, no polynomial
// normal form; residuals that need more than this are checked numerically.

Expr simplified_unary(UnaryOp op, const Expr& a);
Expr simplified_binary(BinaryOp op, const Expr& a, const Expr& b);

namespace detail {

inline bool fold_unary_number(UnaryOp op, const Number& x, Number* out) {
  if (op == UnaryOp::neg) {
    *out = -x;
    return true;
  }
  if (x.exact()) {
    // exact special values
    if (x.is_zero()) {
      switch (op) {
        case UnaryOp::sin:
        case UnaryOp::tan:
        case UnaryOp::sinh:
        case UnaryOp::sqrt: *out = Number::integer(0); return true;
        case UnaryOp::cos:
        case UnaryOp::cosh:
        case UnaryOp::exp: *out = Number::integer(1); return true;
        default: break;
      }
    }
    if (x.is_one() && op == UnaryOp::ln) {
      *out = Number::integer(0);
      return true;
    }
    if (op == UnaryOp::sqrt) {
      Number r;
      if (x.exact_sqrt(&r)) {
        *out = r;
        return true;
      }
    }
  }
  double v = x.value();
  double folded;
  switch (op) {
    case UnaryOp::sin: folded = std::sin(v); break;
    case UnaryOp::cos: folded = std::cos(v); break;
    case UnaryOp::tan: folded = std::tan(v); break;
    case UnaryOp::sinh: folded = std::sinh(v); break;
    case UnaryOp::cosh: folded = std::cosh(v); break;
    case UnaryOp::exp: folded = std::exp(v); break;
    case UnaryOp::ln:
      if (v <= 0.0) return false;  // leave for evaluate() to report
      folded = std::log(v);
      break;
    case UnaryOp::sqrt:
      if (v < 0.0) return false;
      folded = std::sqrt(v);
      break;
    default: return false;
  }
  if (!std::isfinite(folded)) return false;  // never fold to inf/nan
  *out = Number::real(folded);
  return true;
}

inline bool fold_pow_number(const Number& base, const Number& e, Number* out) {
  if (e.is_integer() && std::abs(e.num()) <= 64) {
    *out = base.pow_int(e.num());
    return true;
  }
  if (e.exact() && e.den() == 2 && std::abs(e.num()) <= 64) {
    Number r;
    if (base.exact_sqrt(&r)) {
      *out = r.pow_int(e.num());
      return true;
    }
  }
  double b = base.value(), x = e.value();
  if (b == 0.0 && x == 0.0) {
    *out = Number::integer(1);
    return true;
  }
  if (b > 0.0 || (b == 0.0 && x > 0.0)) {
    double folded = std::pow(b, x);
    if (!std::isfinite(folded)) return false;
    *out = Number::real(folded);
    return true;
  }
  return false;
}

}  // namespace detail

inline Expr simplified_unary(UnaryOp op, const Expr& a) {
  if (is_number(a)) {
    Number out;
    if (detail::fold_unary_number(op, a.node().num, &out) && std::isfinite(out.value()))
      return Expr::number(out);
  }
  if (op == UnaryOp::neg && is_unary(a, UnaryOp::neg)) return a.node().a;
  return Expr::unary(op, a);
}

inline Expr simplified_binary(BinaryOp op, const Expr& a, const Expr& b) {
  const bool na = is_number(a), nb = is_number(b);
  auto folded = [](const Number& n) -> Expr {
    return Expr::number(n);  // caller checks finiteness
  };
  switch (op) {
    case BinaryOp::add:
      if (na && nb) {
        Number r = a.node().num + b.node().num;
        if (std::isfinite(r.value())) return folded(r);
      }
      if (is_zero(a)) return b;
      if (is_zero(b)) return a;
      if (is_unary(b, UnaryOp::neg) && structurally_equal(a, b.node().a)) return Expr::integer(0);
      if (is_unary(a, UnaryOp::neg) && structurally_equal(a.node().a, b)) return Expr::integer(0);
      break;
    case BinaryOp::sub:
      if (na && nb) {
        Number r = a.node().num - b.node().num;
        if (std::isfinite(r.value())) return folded(r);
      }
      if (is_zero(b)) return a;
      if (is_zero(a)) return simplified_unary(UnaryOp::neg, b);
      if (structurally_equal(a, b)) return Expr::integer(0);
      break;
    case BinaryOp::mul:
      if (na && nb) {
        Number r = a.node().num * b.node().num;
        if (std::isfinite(r.value())) return folded(r);
      }
      if (is_zero(a) || is_zero(b)) return Expr::integer(0);
      if (is_one(a)) return b;
      if (is_one(b)) return a;
      if (na && a.node().num.same(Number::integer(-1))) return simplified_unary(UnaryOp::neg, b);
      if (nb && b.node().num.same(Number::integer(-1))) return simplified_unary(UnaryOp::neg, a);
      break;
    case BinaryOp::div:
      if (na && nb && !b.node().num.is_zero()) {
        Number r = a.node().num / b.node().num;
        if (std::isfinite(r.value())) return folded(r);
      }
      if (is_zero(a) && !(nb && b.node().num.is_zero())) return Expr::integer(0);
      if (is_one(b)) return a;
      break;
    case BinaryOp::pow: {
      if (na && nb) {
        Number out;
        if (detail::fold_pow_number(a.node().num, b.node().num, &out) &&
            std::isfinite(out.value()))
          return Expr::number(out);
      }
      if (is_zero(b)) return Expr::integer(1);
      if (is_one(b)) return a;
      if (is_one(a)) return Expr::integer(1);
      if (is_zero(a) && nb && b.node().num.positive()) return Expr::integer(0);
      break;
    }
  }
  return Expr::binary(op, a, b);
}

/// Value-preserving weak normal form; idempotent (a second pass is a
/// structural no-op).
inline Expr simplify(const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::number:
    case ExprNode::Kind::symbol:
      return e;
    case ExprNode::Kind::unary: {
      Expr a = simplify(n.a);
      return simplified_unary(n.uop, a);
    }
    case ExprNode::Kind::binary: {
      Expr a = simplify(n.a);
      Expr b = simplify(n.b);
      return simplified_binary(n.bop, a, b);
    }
  }
  return e;
}

// Convenience builders used heavily by the geometry layer; all simplify on
// the fly.
inline Expr ex_add(const Expr& a, const Expr& b) { return simplified_binary(BinaryOp::add, a, b); }
inline Expr ex_sub(const Expr& a, const Expr& b) { return simplified_binary(BinaryOp::sub, a, b); }
inline Expr ex_mul(const Expr& a, const Expr& b) { return simplified_binary(BinaryOp::mul, a, b); }
inline Expr ex_div(const Expr& a, const Expr& b) { return simplified_binary(BinaryOp::div, a, b); }
inline Expr ex_pow(const Expr& a, const Expr& b) { return simplified_binary(BinaryOp::pow, a, b); }
inline Expr ex_neg(const Expr& a) { return simplified_unary(UnaryOp::neg, a); }
inline Expr ex_fn(UnaryOp op, const Expr& a) { return simplified_unary(op, a); }

}  // namespace gnlie

#endif
