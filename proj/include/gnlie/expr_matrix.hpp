#ifndef GNLIE_EXPR_MATRIX_HPP
#define GNLIE_EXPR_MATRIX_HPP

#include <Eigen/Dense>
#include <vector>

#include "gnlie/eval.hpp"
#include "gnlie/simplify.hpp"

namespace gnlie {

/// Dense matrix of expressions. Row-major, value semantics.
class ExprMatrix {
 public:
  ExprMatrix() : rows_(0), cols_(0) {}
  ExprMatrix(int rows, int cols) : rows_(rows), cols_(cols), v_(rows * cols, Expr::integer(0)) {}

  static ExprMatrix identity(int n) {
    ExprMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Expr::integer(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Expr& at(int i, int j) { return v_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Expr& at(int i, int j) const { return v_[static_cast<std::size_t>(i) * cols_ + j]; }

  ExprMatrix simplified() const {
    ExprMatrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out.at(i, j) = simplify(at(i, j));
    return out;
  }

  bool structurally_zero() const {
    for (const Expr& e : v_)
      if (!is_zero(e)) return false;
    return true;
  }

 private:
  int rows_, cols_;
  std::vector<Expr> v_;
};

inline Eigen::MatrixXd eval_matrix(const ExprMatrix& m, const PointBinding& p) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m.at(i, j), p);
  return out;
}

inline std::vector<double> eval_vector(const std::vector<Expr>& v, const PointBinding& p) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = evaluate(v[i], p);
  return out;
}

/// Max-abs evaluation of a matrix of expressions over a set of points; the
/// residual norm used throughout.
template <class Points>
double max_abs_over_points(const ExprMatrix& m, const Points& points) {
  double worst = 0.0;
  for (const auto& p : points)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        worst = std::max(worst, std::abs(evaluate(m.at(i, j), p)));
  return worst;
}

}  // namespace gnlie

#endif
