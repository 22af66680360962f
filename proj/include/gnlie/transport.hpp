#ifndef GNLIE_TRANSPORT_HPP
#define GNLIE_TRANSPORT_HPP

#include "gnlie/flow.hpp"
#include "gnlie/spin_connection.hpp"

namespace gnlie {

/// Parallel transport of a spinor along the flow of xi: position and spinor
/// integrate jointly by RK4, the spinor obeying nabla_{xdot} psi = 0, i.e.
/// d psi/dt = -xdot^mu Omega_mu psi with Omega_mu the spinor connection
/// matrix.
inline Eigen::VectorXcd parallel_transport_spinor(const Eigen::VectorXcd& psi0,
                                                  const VectorFieldExpr& xi,
                                                  const SpinConnection& w, const GammaRep& rep,
                                                  const std::vector<double>& x0, double t,
                                                  int steps) {
  const Chart& c = w.chart;
  const int n = c.dim();
  const int N = rep.N;
  if (psi0.size() != N) throw DimensionError("parallel_transport_spinor: spinor size mismatch");

  // state layout: [x^mu..., Re psi..., Im psi...]
  std::vector<double> state(n + 2 * N);
  for (int mu = 0; mu < n; ++mu) state[mu] = x0[mu];
  for (int i = 0; i < N; ++i) {
    state[n + i] = psi0(i).real();
    state[n + N + i] = psi0(i).imag();
  }

  auto rhs = [&](const std::vector<double>& s) {
    std::vector<double> x(s.begin(), s.begin() + n);
    PointBinding p = c.bind(x);
    std::vector<double> ds(s.size(), 0.0);
    Eigen::VectorXcd psi(N);
    for (int i = 0; i < N; ++i) psi(i) = std::complex<double>(s[n + i], s[n + N + i]);
    ComplexMatrix total = ComplexMatrix::Zero(N, N);
    for (int mu = 0; mu < n; ++mu) {
      double v = evaluate(xi.comps[mu], p);
      ds[mu] = v;
      if (v != 0.0) total += v * spinor_connection_at(w, rep, mu, p);
    }
    Eigen::VectorXcd dpsi = -total * psi;
    for (int i = 0; i < N; ++i) {
      ds[n + i] = dpsi(i).real();
      ds[n + N + i] = dpsi(i).imag();
    }
    return ds;
  };

  std::vector<double> out = rk4_integrate(state, t, steps, rhs);
  Eigen::VectorXcd psi(N);
  for (int i = 0; i < N; ++i) psi(i) = std::complex<double>(out[n + i], out[n + N + i]);
  return psi;
}

/// Transport operator (identity at t=0) along the same curve; columns are
/// transported basis spinors. Used as the finite-difference oracle for the
/// covariant derivative.
inline ComplexMatrix parallel_transport_operator(const VectorFieldExpr& xi,
                                                 const SpinConnection& w, const GammaRep& rep,
                                                 const std::vector<double>& x0, double t,
                                                 int steps) {
  ComplexMatrix u(rep.N, rep.N);
  for (int j = 0; j < rep.N; ++j) {
    Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(rep.N);
    basis(j) = 1.0;
    u.col(j) = parallel_transport_spinor(basis, xi, w, rep, x0, t, steps);
  }
  return u;
}

}  // namespace gnlie

#endif
