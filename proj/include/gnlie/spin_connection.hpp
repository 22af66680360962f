#ifndef GNLIE_SPIN_CONNECTION_HPP
#define GNLIE_SPIN_CONNECTION_HPP

#include "gnlie/complex_expr.hpp"
#include "gnlie/frame.hpp"
#include "gnlie/gamma.hpp"

namespace gnlie {

/// Frame connection coefficients
///
///   omega_mu^a_b = theta^a_nu (d_mu e_b^nu + Gamma^nu_{mu sigma} e_b^sigma),
///
/// stored eta-lowered as omega_{mu a b} = eta_{ac} omega_mu^c_b, which is
/// antisymmetric in (a,b) whenever the frame is orthonormal and the
/// connection metric-compatible. That antisymmetry is the correctness
/// witness.
struct SpinConnection {
  Chart chart;
  std::vector<ExprMatrix> omega;  // omega[mu].at(a, b) = omega_{mu a b}

  const Expr& at(int mu, int a, int b) const { return omega[mu].at(a, b); }
};

inline SpinConnection spin_connection(const FrameField& f, const Connection& conn) {
  const int n = f.chart.dim();
  SpinConnection out{f.chart, std::vector<ExprMatrix>(n, ExprMatrix(n, n))};
  for (int mu = 0; mu < n; ++mu)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Expr s = Expr::integer(0);
        for (int nu = 0; nu < n; ++nu) {
          Expr inner = differentiate(f.frame.at(b, nu), f.chart.ids[mu]);
          for (int sg = 0; sg < n; ++sg)
            inner = ex_add(inner, ex_mul(conn.at(nu, mu, sg), f.frame.at(b, sg)));
          s = ex_add(s, ex_mul(f.coframe.at(a, nu), inner));
        }
        if (f.chart.sig.eta(a) < 0) s = ex_neg(s);
        out.omega[mu].at(a, b) = simplify(s);
      }
  return out;
}

/// Max |omega_{mu a b} + omega_{mu b a}| over points.
template <class Points>
double spin_connection_antisymmetry_residual(const SpinConnection& w, const Points& points) {
  double worst = 0.0;
  const int n = w.chart.dim();
  for (const auto& p : points)
    for (int mu = 0; mu < n; ++mu)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          worst = std::max(
              worst, std::abs(evaluate(w.at(mu, a, b), p) + evaluate(w.at(mu, b, a), p)));
  return worst;
}

/// Spinor connection matrix for direction mu:
///
///   Omega_mu = -1/4 omega_{mu a b} gamma^a gamma^b,
///
/// entering the covariant derivative as nabla_mu psi = d_mu psi +
/// Omega_mu psi. The sign is pinned by the requirement that the two local
/// forms of the Kosmann spinor Lie derivative coincide.
inline std::vector<ComplexExpr> spinor_connection_matrix(const SpinConnection& w,
                                                         const GammaRep& rep, int mu) {
  const int n = w.chart.dim();
  const int N = rep.N;
  std::vector<ComplexExpr> out(static_cast<std::size_t>(N) * N, ComplexExpr::zero());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (is_zero(w.at(mu, a, b))) continue;
      Expr coeff = simplify(ex_mul(Expr::rational(-1, 4), w.at(mu, a, b)));
      ComplexMatrix gg = rep.gamma[a] * rep.gamma[b];
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          std::complex<double> c = gg(i, j);
          if (c == std::complex<double>(0.0, 0.0)) continue;
          out[static_cast<std::size_t>(i) * N + j] =
              out[static_cast<std::size_t>(i) * N + j] + scale(coeff, ComplexExpr::from(c));
        }
    }
  for (auto& e : out) e = simplify(e);
  return out;
}

/// Numeric spinor connection matrix at a point (used by the transport
/// oracle).
inline ComplexMatrix spinor_connection_at(const SpinConnection& w, const GammaRep& rep, int mu,
                                          const PointBinding& p) {
  const int n = w.chart.dim();
  ComplexMatrix out = ComplexMatrix::Zero(rep.N, rep.N);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double c = evaluate(w.at(mu, a, b), p);
      if (c == 0.0) continue;
      out += (-0.25 * c) * (rep.gamma[a] * rep.gamma[b]);
    }
  return out;
}

}  // namespace gnlie

#endif
