#ifndef GNLIE_FRAME_HPP
#define GNLIE_FRAME_HPP

#include "gnlie/metric.hpp"

namespace gnlie {

/// Orthonormal frame e_a^mu with coframe theta^a_mu. Row index is the frame
/// label a, column index the coordinate mu, for both.
struct FrameField {
  Chart chart;
  ExprMatrix frame;    // frame.at(a, mu)   = e_a^mu
  ExprMatrix coframe;  // coframe.at(a, mu) = theta^a_mu
};

namespace detail {

/// Symbolic square root of a manifestly nonnegative factor: exact on perfect
/// squares, u on u^2 and u*u (valid on charts where u > 0, which is how the
/// diagonal scenes are set up), sqrt(...) otherwise.
inline Expr symbolic_sqrt(const Expr& e) {
  if (is_number(e)) {
    Number r;
    if (e.node().num.exact_sqrt(&r)) return Expr::number(r);
  }
  if (is_binary(e, BinaryOp::pow)) {
    const ExprNode& n = e.node();
    if (is_number(n.b) && n.b.node().num.same(Number::integer(2))) return n.a;
  }
  if (is_binary(e, BinaryOp::mul) && structurally_equal(e.node().a, e.node().b)) return e.node().a;
  return ex_fn(UnaryOp::sqrt, e);
}

}  // namespace detail

/// Symbolic orthonormal frame for a diagonal metric: e_a^mu =
/// delta_a^mu / sqrt(|g_mumu|), frame vector a paired with coordinate a. The
/// sign of g_aa must match eta_aa, which ties the chart's coordinate order to
/// its signature order.
inline FrameField orthonormal_frame(const MetricField& g) {
  if (!g.diagonal())
    throw Error(
        "orthonormal_frame: metric is not diagonal; use the pointwise Gram-Schmidt path");
  const int n = g.chart.dim();
  FrameField f{g.chart, ExprMatrix(n, n), ExprMatrix(n, n)};
  for (int a = 0; a < n; ++a) {
    Expr gaa = g.g.at(a, a);
    if (g.chart.sig.eta(a) < 0) gaa = simplify(ex_neg(gaa));  // |g_aa| given the signature
    Expr s = detail::symbolic_sqrt(gaa);
    if (is_zero(s)) throw Error("orthonormal_frame: |g_aa| vanishes identically");
    f.frame.at(a, a) = ex_div(Expr::integer(1), s);
    f.coframe.at(a, a) = s;
  }
  return f;
}

/// Pointwise signature-aware Gram-Schmidt for non-diagonal metrics. Returns
/// numeric frame/coframe matrices at one point, laid out like FrameField.
struct FrameAtPoint {
  Eigen::MatrixXd frame;    // (a, mu)
  Eigen::MatrixXd coframe;  // (a, mu)
};

inline FrameAtPoint orthonormal_frame_at(const MetricField& g, const PointBinding& p) {
  const int n = g.chart.dim();
  Eigen::MatrixXd gm = eval_matrix(g.g, p);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v(a) = 1.0;
    for (int b = 0; b < a; ++b) {
      double proj = g.chart.sig.eta(b) * (e.row(b) * gm * v)(0);
      v -= proj * e.row(b).transpose();
    }
    double n2 = (v.transpose() * gm * v)(0);
    if (std::abs(n2) < 1e-14)
      throw Error("orthonormal_frame_at: degenerate direction at sample point");
    if ((n2 > 0) != (g.chart.sig.eta(a) > 0))
      throw Error(
          "orthonormal_frame_at: metric sign does not match the chart signature order");
    e.row(a) = v.transpose() / std::sqrt(std::abs(n2));
  }
  FrameAtPoint out;
  out.frame = e;
  out.coframe.resize(n, n);
  for (int a = 0; a < n; ++a)
    out.coframe.row(a) = g.chart.sig.eta(a) * (gm * e.row(a).transpose()).transpose();
  return out;
}

/// Max deviation from e_a^mu theta^b_mu = delta and g e e = eta over points.
template <class Points>
double frame_residual(const MetricField& g, const FrameField& f, const Points& points) {
  const int n = g.chart.dim();
  double worst = 0.0;
  for (const auto& p : points) {
    Eigen::MatrixXd e = eval_matrix(f.frame, p);
    Eigen::MatrixXd th = eval_matrix(f.coframe, p);
    Eigen::MatrixXd gm = eval_matrix(g.g, p);
    Eigen::MatrixXd duality = e * th.transpose() - Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd ortho = e * gm * e.transpose() - g.chart.sig.matrix();
    worst = std::max({worst, duality.cwiseAbs().maxCoeff(), ortho.cwiseAbs().maxCoeff()});
  }
  return worst;
}

}  // namespace gnlie

#endif
