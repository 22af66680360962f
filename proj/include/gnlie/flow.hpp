#ifndef GNLIE_FLOW_HPP
#define GNLIE_FLOW_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "gnlie/chart.hpp"
#include "gnlie/eval.hpp"

namespace gnlie {

template <class State>
State add_scaled(const State& y, double a, const State& dy) {
  State out = y;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += a * dy[i];
  return out;
}

/// Classical RK4 with a fixed step count. Fixed-step on purpose: residual
/// numbers must reproduce bit-for-bit across runs.
template <class State, class Rhs>
State rk4_integrate(State y, double t_total, int steps, Rhs&& f) {
  const double h = t_total / steps;
  for (int n = 0; n < steps; ++n) {
    State k1 = f(y);
    State k2 = f(add_scaled(y, 0.5 * h, k1));
    State k3 = f(add_scaled(y, 0.5 * h, k2));
    State k4 = f(add_scaled(y, h, k3));
    for (std::size_t i = 0; i < y.size(); ++i)
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return y;
}

/// Settings for the limit-quotient Lie derivatives: flow out to +-t and
/// Richardson-extrapolate the central difference quotients at t and t/2.
struct FlowConfig {
  double t = 0.01;
  int steps = 32;

  static FlowConfig make(double t, int steps) {
    if (t == 0.0) throw Error("FlowConfig: t must be nonzero");
    if (steps < 8) throw Error("FlowConfig: need at least 8 integration steps");
    return FlowConfig{t, steps};
  }
};

/// Point reached by flowing along xi for parameter t.
inline std::vector<double> flow_map(const VectorFieldExpr& xi, const Chart& chart,
                                    const std::vector<double>& x, double t, int steps) {
  if (xi.dim() != chart.dim() || static_cast<int>(x.size()) != chart.dim())
    throw DimensionError("flow_map: dimension mismatch");
  auto rhs = [&](const std::vector<double>& y) {
    PointBinding p = chart.bind(y);
    std::vector<double> v(y.size());
    for (int mu = 0; mu < chart.dim(); ++mu) v[mu] = evaluate(xi.comps[mu], p);
    return v;
  };
  return rk4_integrate(x, t, steps, rhs);
}

/// Jacobian d phi_t / d x by central finite differences of the flow map,
/// with the offset scaled by the coordinate magnitude.
inline Eigen::MatrixXd flow_jacobian(const VectorFieldExpr& xi, const Chart& chart,
                                     const std::vector<double>& x, double t, int steps,
                                     double h_base = 1e-5) {
  const int n = chart.dim();
  Eigen::MatrixXd jac(n, n);
  for (int j = 0; j < n; ++j) {
    double h = h_base * std::max(1.0, std::abs(x[j]));
    std::vector<double> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    std::vector<double> fp = flow_map(xi, chart, xp, t, steps);
    std::vector<double> fm = flow_map(xi, chart, xm, t, steps);
    for (int i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

}  // namespace gnlie

#endif
