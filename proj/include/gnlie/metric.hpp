#ifndef GNLIE_METRIC_HPP
#define GNLIE_METRIC_HPP

#include <Eigen/Eigenvalues>

#include "gnlie/chart.hpp"
#include "gnlie/diff.hpp"
#include "gnlie/expr_matrix.hpp"

namespace gnlie {

/// g_{mu nu}(x) as a symmetric matrix of expressions.
struct MetricField {
  Chart chart;
  ExprMatrix g;

  static MetricField make(Chart chart, ExprMatrix g) {
    if (g.rows() != chart.dim() || g.cols() != chart.dim())
      throw DimensionError("metric must be " + std::to_string(chart.dim()) + "x" +
                           std::to_string(chart.dim()));
    ExprMatrix s = g.simplified();
    for (int i = 0; i < s.rows(); ++i)
      for (int j = i + 1; j < s.cols(); ++j)
        if (!structurally_equal(s.at(i, j), s.at(j, i)))
          throw SceneError("metric is not symmetric at entry (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
    return MetricField{std::move(chart), std::move(s)};
  }

  bool diagonal() const {
    for (int i = 0; i < g.rows(); ++i)
      for (int j = 0; j < g.cols(); ++j)
        if (i != j && !is_zero(g.at(i, j))) return false;
    return true;
  }

  /// Checks invertibility and signature (p,q) at one point.
  void check_signature_at(const PointBinding& p) const {
    Eigen::MatrixXd gm = eval_matrix(g, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gm);
    int plus = 0, minus = 0;
    for (int i = 0; i < gm.rows(); ++i) {
      double l = es.eigenvalues()(i);
      if (std::abs(l) < 1e-12) throw SceneError("metric is singular at a sample point");
      (l > 0 ? plus : minus)++;
    }
    if (plus != chart.sig.p || minus != chart.sig.q)
      throw SceneError("metric signature at sample point is (" + std::to_string(plus) + "," +
                       std::to_string(minus) + "), expected (" + std::to_string(chart.sig.p) +
                       "," + std::to_string(chart.sig.q) + ")");
  }
};

namespace detail {

inline Expr determinant_expr(const ExprMatrix& m) {
  const int n = m.rows();
  if (n == 1) return m.at(0, 0);
  Expr det = Expr::integer(0);
  for (int j = 0; j < n; ++j) {
    ExprMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Expr term = ex_mul(m.at(0, j), determinant_expr(minor));
    det = (j % 2 == 0) ? ex_add(det, term) : ex_sub(det, term);
  }
  return det;
}

}  // namespace detail

inline Expr metric_determinant(const MetricField& g) {
  if (g.diagonal()) {
    Expr det = Expr::integer(1);
    for (int i = 0; i < g.g.rows(); ++i) det = ex_mul(det, g.g.at(i, i));
    return det;
  }
  return simplify(detail::determinant_expr(g.g));
}

/// Symbolic inverse metric. Diagonal metrics invert entrywise; the general
/// path is adjugate/determinant, fine at chart dimensions.
inline ExprMatrix metric_inverse(const MetricField& g) {
  const int n = g.g.rows();
  ExprMatrix inv(n, n);
  if (g.diagonal()) {
    for (int i = 0; i < n; ++i) inv.at(i, i) = ex_div(Expr::integer(1), g.g.at(i, i));
    return inv;
  }
  Expr det = metric_determinant(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExprMatrix minor(n - 1, n - 1);
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(rr, cc++) = g.g.at(r, c);
        }
        ++rr;
      }
      Expr cof = simplify(detail::determinant_expr(minor));
      if ((i + j) % 2 == 1) cof = ex_neg(cof);
      inv.at(j, i) = ex_div(cof, det);  // adjugate transposes
    }
  return inv;
}

/// Levi-Civita Christoffel symbols, Gamma[rho](mu,nu), symmetric in
/// (mu,nu).
struct Connection {
  Chart chart;
  std::vector<ExprMatrix> gamma;  // indexed by rho

  const Expr& at(int rho, int mu, int nu) const { return gamma[rho].at(mu, nu); }
};

inline Connection christoffel(const MetricField& g) {
  const int n = g.chart.dim();
  ExprMatrix ginv = metric_inverse(g);

  // dg[sigma](mu,nu) = d_sigma g_{mu nu}
  std::vector<ExprMatrix> dg(n, ExprMatrix(n, n));
  for (int s = 0; s < n; ++s)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) dg[s].at(mu, nu) = differentiate(g.g.at(mu, nu), g.chart.ids[s]);

  Connection conn{g.chart, std::vector<ExprMatrix>(n, ExprMatrix(n, n))};
  for (int rho = 0; rho < n; ++rho)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu; nu < n; ++nu) {
        Expr sum = Expr::integer(0);
        for (int s = 0; s < n; ++s) {
          Expr inner = ex_sub(ex_add(dg[mu].at(s, nu), dg[nu].at(s, mu)), dg[s].at(mu, nu));
          sum = ex_add(sum, ex_mul(ginv.at(rho, s), inner));
        }
        Expr out = simplify(ex_mul(Expr::rational(1, 2), sum));
        conn.gamma[rho].at(mu, nu) = out;
        conn.gamma[rho].at(nu, mu) = out;
      }
  return conn;
}

/// Max |nabla_rho g_{mu nu}| over the given points; the metricity witness
/// for a computed connection.
template <class Points>
double metricity_residual(const MetricField& g, const Connection& conn, const Points& points) {
  const int n = g.chart.dim();
  double worst = 0.0;
  for (const auto& p : points) {
    for (int rho = 0; rho < n; ++rho)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double v = evaluate(differentiate(g.g.at(mu, nu), g.chart.ids[rho]), p);
          for (int s = 0; s < n; ++s) {
            v -= evaluate(conn.at(s, rho, mu), p) * evaluate(g.g.at(s, nu), p);
            v -= evaluate(conn.at(s, rho, nu), p) * evaluate(g.g.at(mu, s), p);
          }
          worst = std::max(worst, std::abs(v));
        }
  }
  return worst;
}

}  // namespace gnlie

#endif
