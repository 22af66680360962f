#ifndef GNLIE_NUMERIC_LIE_HPP
#define GNLIE_NUMERIC_LIE_HPP

#include "gnlie/flow.hpp"
#include "gnlie/frame.hpp"
#include "gnlie/lie_tensor.hpp"

namespace gnlie {

// Independent ground truth for the symbolic Lie derivatives: realize
//
//   (lie_xi T)(x) = lim_{t->0} (1/t) [ (phi_t^* T)(x) - T(x) ]
//
// with RK4 flows, finite-differenced flow Jacobians acting on the indices,
// |det J|^w for the density weight, central difference quotients, and one
// Richardson level (t, t/2).

namespace detail {

/// Pullback of T to x along the flow at parameter t: upper indices get
/// J^{-1}, lower indices get J, and the weight contributes |det J|^w.
inline std::vector<double> pullback_tensor(const VectorFieldExpr& xi, const TensorFieldExpr& t,
                                           const std::vector<double>& x, double time, int steps) {
  const Chart& c = t.chart;
  const int n = c.dim();
  std::vector<double> y = flow_map(xi, c, x, time, steps);
  Eigen::MatrixXd jac = flow_jacobian(xi, c, x, time, steps);
  if (std::abs(jac.determinant()) < 1e-12)
    throw Error("numeric_lie_tensor: flow jacobian is ill-conditioned at this point");
  Eigen::MatrixXd jinv = jac.inverse();
  PointBinding py = c.bind(y);
  std::vector<double> vals(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) vals[k] = evaluate(t.comps[k], py);

  std::vector<double> out(t.size(), 0.0);
  if (t.rank() == 0) {
    out[0] = vals[0];
  } else if (t.rank() == 1) {
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        out[i] += (t.r == 1 ? jinv(i, a) : jac(a, i)) * vals[a];
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            double fi = t.r >= 1 ? jinv(i, a) : jac(a, i);
            double fj = t.r == 2 ? jinv(j, b) : jac(b, j);
            acc += fi * fj * vals[static_cast<std::size_t>(a) * n + b];
          }
        out[static_cast<std::size_t>(i) * n + j] = acc;
      }
  }
  if (t.weight != 0.0) {
    double det = std::abs(jac.determinant());
    double w = std::pow(det, t.weight);
    for (double& v : out) v *= w;
  }
  return out;
}

inline std::vector<double> central_quotient(const VectorFieldExpr& xi, const TensorFieldExpr& t,
                                            const std::vector<double>& x, double time, int steps) {
  std::vector<double> plus = pullback_tensor(xi, t, x, time, steps);
  std::vector<double> minus = pullback_tensor(xi, t, x, -time, steps);
  for (std::size_t k = 0; k < plus.size(); ++k) plus[k] = (plus[k] - minus[k]) / (2.0 * time);
  return plus;
}

}  // namespace detail

/// Numeric Lie derivative of a tensor density at one point.
inline std::vector<double> numeric_lie_tensor(const VectorFieldExpr& xi, const TensorFieldExpr& t,
                                              const std::vector<double>& x, const FlowConfig& cfg) {
  if (t.rank() > 2) throw Error("numeric_lie_tensor: valence r+s > 2 not supported");
  std::vector<double> d1 = detail::central_quotient(xi, t, x, cfg.t, cfg.steps);
  std::vector<double> d2 = detail::central_quotient(xi, t, x, cfg.t / 2.0, cfg.steps);
  for (std::size_t k = 0; k < d1.size(); ++k) d1[k] = (4.0 * d2[k] - d1[k]) / 3.0;
  return d1;
}

namespace detail {

/// Frame comparison coefficients c^a_b(t) = theta^a(phi_t x) . J_t . e_b(x);
/// their t-derivative at 0 is the natural lift coefficient matrix.
inline Eigen::MatrixXd transported_frame_coeffs(const VectorFieldExpr& xi, const FrameField& f,
                                                const std::vector<double>& x, double time,
                                                int steps) {
  const Chart& c = f.chart;
  std::vector<double> y = flow_map(xi, c, x, time, steps);
  Eigen::MatrixXd jac = flow_jacobian(xi, c, x, time, steps);
  Eigen::MatrixXd e_here = eval_matrix(f.frame, c.bind(x));      // (b, nu)
  Eigen::MatrixXd th_there = eval_matrix(f.coframe, c.bind(y));  // (a, rho)
  return th_there * jac * e_here.transpose();                    // (a, b)
}

}  // namespace detail

/// Numeric natural-lift coefficients (L xi)^a_b at one point.
inline Eigen::MatrixXd numeric_natural_lift(const VectorFieldExpr& xi, const FrameField& f,
                                            const std::vector<double>& x, const FlowConfig& cfg) {
  auto quotient = [&](double time) {
    Eigen::MatrixXd plus = detail::transported_frame_coeffs(xi, f, x, time, cfg.steps);
    Eigen::MatrixXd minus = detail::transported_frame_coeffs(xi, f, x, -time, cfg.steps);
    return Eigen::MatrixXd((plus - minus) / (2.0 * time));
  };
  Eigen::MatrixXd d1 = quotient(cfg.t);
  Eigen::MatrixXd d2 = quotient(cfg.t / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace gnlie

#endif
