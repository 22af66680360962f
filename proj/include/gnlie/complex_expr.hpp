#ifndef GNLIE_COMPLEX_EXPR_HPP
#define GNLIE_COMPLEX_EXPR_HPP

#include <complex>
#include <vector>

#include "gnlie/diff.hpp"
#include "gnlie/expr_matrix.hpp"

namespace gnlie {

/// Complex-valued expression as an explicit (re, im) pair of real
/// expressions; keeps the expression core real-valued.
struct ComplexExpr {
  Expr re = Expr::integer(0);
  Expr im = Expr::integer(0);

  static ComplexExpr zero() { return ComplexExpr{}; }

  static ComplexExpr from(const std::complex<double>& c) {
    ComplexExpr z;
    z.re = constant(c.real());
    z.im = constant(c.imag());
    return z;
  }

  static Expr constant(double v) {
    if (v == std::nearbyint(v) && std::abs(v) < 1e15)
      return Expr::integer(static_cast<long long>(v));
    return Expr::real(v);
  }
};

inline ComplexExpr operator+(const ComplexExpr& a, const ComplexExpr& b) {
  return {ex_add(a.re, b.re), ex_add(a.im, b.im)};
}

inline ComplexExpr operator-(const ComplexExpr& a, const ComplexExpr& b) {
  return {ex_sub(a.re, b.re), ex_sub(a.im, b.im)};
}

inline ComplexExpr operator*(const ComplexExpr& a, const ComplexExpr& b) {
  return {ex_sub(ex_mul(a.re, b.re), ex_mul(a.im, b.im)),
          ex_add(ex_mul(a.re, b.im), ex_mul(a.im, b.re))};
}

/// Scale by a real expression.
inline ComplexExpr scale(const Expr& s, const ComplexExpr& a) {
  return {ex_mul(s, a.re), ex_mul(s, a.im)};
}

/// Scale by a complex constant.
inline ComplexExpr scale(const std::complex<double>& c, const ComplexExpr& a) {
  return ComplexExpr::from(c) * a;
}

inline ComplexExpr simplify(const ComplexExpr& a) {
  return {simplify(a.re), simplify(a.im)};
}

inline std::complex<double> evaluate_complex(const ComplexExpr& a, const PointBinding& p) {
  return {evaluate(a.re, p), evaluate(a.im, p)};
}

inline ComplexExpr differentiate(const ComplexExpr& a, int sym) {
  return {differentiate(a.re, sym), differentiate(a.im, sym)};
}

using ComplexVectorExpr = std::vector<ComplexExpr>;

inline std::vector<std::complex<double>> evaluate_complex_vector(const ComplexVectorExpr& v,
                                                                 const PointBinding& p) {
  std::vector<std::complex<double>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = evaluate_complex(v[i], p);
  return out;
}

}  // namespace gnlie

#endif
