#ifndef GNLIE_LIE_SPINOR_HPP
#define GNLIE_LIE_SPINOR_HPP

#include "gnlie/killing.hpp"
#include "gnlie/spin_connection.hpp"

namespace gnlie {

/// Spinor field: N complex components over a chart.
struct SpinorFieldExpr {
  ComplexVectorExpr comps;

  int dim() const { return static_cast<int>(comps.size()); }

  static SpinorFieldExpr zero(int n) {
    SpinorFieldExpr s;
    s.comps.assign(n, ComplexExpr::zero());
    return s;
  }
};

inline Eigen::VectorXcd evaluate_spinor(const SpinorFieldExpr& psi, const PointBinding& p) {
  Eigen::VectorXcd out(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) out(i) = evaluate_complex(psi.comps[i], p);
  return out;
}

namespace detail {

inline ComplexVectorExpr apply_matrix(const std::vector<ComplexExpr>& m, int N,
                                      const ComplexVectorExpr& v) {
  ComplexVectorExpr out(N, ComplexExpr::zero());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      out[i] = out[i] + m[static_cast<std::size_t>(i) * N + j] * v[j];
  return out;
}

inline ComplexVectorExpr apply_constant_matrix(const ComplexMatrix& m,
                                               const ComplexVectorExpr& v) {
  const int N = static_cast<int>(m.rows());
  ComplexVectorExpr out(N, ComplexExpr::zero());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::complex<double> c = m(i, j);
      if (c == std::complex<double>(0.0, 0.0)) continue;
      out[i] = out[i] + scale(c, v[j]);
    }
  return out;
}

}  // namespace detail

/// Frame-directed spinor covariant derivative,
///   nabla_a psi = e_a^mu (d_mu psi + Omega_mu psi),
/// returned as an m x N array indexed [a][component].
inline std::vector<ComplexVectorExpr> spinor_cov_derivative(const SpinorFieldExpr& psi,
                                                            const SpinConnection& w,
                                                            const GammaRep& rep,
                                                            const FrameField& f) {
  const int n = f.chart.dim();
  if (psi.dim() != rep.N) throw DimensionError("spinor has wrong component count for this signature");
  std::vector<ComplexVectorExpr> nabla_mu(n);
  for (int mu = 0; mu < n; ++mu) {
    auto omega = spinor_connection_matrix(w, rep, mu);
    ComplexVectorExpr v = detail::apply_matrix(omega, rep.N, psi.comps);
    for (int i = 0; i < rep.N; ++i)
      v[i] = simplify(v[i] + differentiate(psi.comps[i], f.chart.ids[mu]));
    nabla_mu[mu] = std::move(v);
  }
  std::vector<ComplexVectorExpr> out(n, ComplexVectorExpr(rep.N, ComplexExpr::zero()));
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu)
      for (int i = 0; i < rep.N; ++i)
        out[a][i] = simplify(out[a][i] + scale(f.frame.at(a, mu), nabla_mu[mu][i]));
  return out;
}

/// Gauge-natural spinor Lie derivative for an arbitrary so(p,q)-valued lift:
///
///   lie_Xi psi = xi^a e_a psi + 1/4 Xi_{ab} gamma^a gamma^b psi,
///
/// where e_a psi is the Pfaff derivative e_a^mu d_mu psi. Coefficients whose
/// algebra part is not antisymmetric at the sample points are rejected.
template <class Points>
SpinorFieldExpr lie_spinor_general(const LiftCoefficients& lift, const SpinorFieldExpr& psi,
                                   const GammaRep& rep, const FrameField& f, const Points& points,
                                   double antisym_tol = 1e-12) {
  const int n = f.chart.dim();
  if (psi.dim() != rep.N) throw DimensionError("spinor has wrong component count for this signature");
  double anti = antisymmetry_residual(lift, points);
  if (anti > antisym_tol)
    throw Error("lie_spinor_general: algebra part is not antisymmetric (residual " +
                std::to_string(anti) + "); project onto so(p,q) first");

  SpinorFieldExpr out = SpinorFieldExpr::zero(rep.N);
  // transport term
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu) {
      Expr dir = simplify(ex_mul(lift.xi_frame[a], f.frame.at(a, mu)));
      if (is_zero(dir)) continue;
      for (int i = 0; i < rep.N; ++i)
        out.comps[i] = out.comps[i] + scale(dir, differentiate(psi.comps[i], f.chart.ids[mu]));
    }
  // algebra term
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (is_zero(lift.Xi.at(a, b))) continue;
      Expr coeff = simplify(ex_mul(Expr::rational(1, 4), lift.Xi.at(a, b)));
      ComplexMatrix gg = rep.gamma[a] * rep.gamma[b];
      ComplexVectorExpr rotated = detail::apply_constant_matrix(gg, psi.comps);
      for (int i = 0; i < rep.N; ++i) out.comps[i] = out.comps[i] + scale(coeff, rotated[i]);
    }
  for (auto& c : out.comps) c = simplify(c);
  return out;
}

/// Both local forms of the Kosmann spinor Lie derivative, built through
/// independent routes:
///
///   frame route:      xi^a e_a psi + 1/4 (L xi)_{[ab]} gamma^a gamma^b psi
///   covariant route:  xi^a nabla_a psi - 1/4 nabla_[a xi_b] gamma^a gamma^b psi
///
/// Their agreement ties the Kosmann lift to the Levi-Civita connection and
/// arbitrates every sign convention in this module.
struct KosmannForms {
  SpinorFieldExpr frame_form;      // from the lift coefficients
  SpinorFieldExpr covariant_form;  // from the spin connection
};

template <class Points>
KosmannForms lie_spinor_kosmann_forms(const VectorFieldExpr& xi, const SpinorFieldExpr& psi,
                                      const MetricField& g, const FrameField& f,
                                      const GammaRep& rep, const Points& points) {
  const int n = g.chart.dim();
  KosmannForms forms;

  LiftCoefficients k = kosmann_coeffs(xi, f);
  forms.frame_form = lie_spinor_general(k, psi, rep, f, points);

  Connection conn = christoffel(g);
  SpinConnection w = spin_connection(f, conn);
  auto nabla = spinor_cov_derivative(psi, w, rep, f);

  // nabla_a xi_b = e_a^mu e_b^nu (d_mu xi_nu - Gamma^rho_{mu nu} xi_rho)
  std::vector<Expr> xi_low(n, Expr::integer(0));
  for (int nu = 0; nu < n; ++nu) {
    Expr s = Expr::integer(0);
    for (int rho = 0; rho < n; ++rho) s = ex_add(s, ex_mul(g.g.at(nu, rho), xi.comps[rho]));
    xi_low[nu] = simplify(s);
  }
  ExprMatrix nabla_xi(n, n);  // holonomic nabla_mu xi_nu
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Expr s = differentiate(xi_low[nu], g.chart.ids[mu]);
      for (int rho = 0; rho < n; ++rho)
        s = ex_sub(s, ex_mul(conn.at(rho, mu, nu), xi_low[rho]));
      nabla_xi.at(mu, nu) = simplify(s);
    }
  ExprMatrix nabla_frame(n, n);  // nabla_a xi_b
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Expr s = Expr::integer(0);
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          s = ex_add(s, ex_mul(f.frame.at(a, mu), ex_mul(f.frame.at(b, nu), nabla_xi.at(mu, nu))));
      nabla_frame.at(a, b) = simplify(s);
    }

  SpinorFieldExpr cov = SpinorFieldExpr::zero(rep.N);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < rep.N; ++i)
      cov.comps[i] = cov.comps[i] + scale(k.xi_frame[a], nabla[a][i]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Expr anti = simplify(ex_mul(
          Expr::rational(-1, 8),
          ex_sub(nabla_frame.at(a, b), nabla_frame.at(b, a))));  // -1/4 * weight-1/2 antisym
      if (is_zero(anti)) continue;
      ComplexMatrix gg = rep.gamma[a] * rep.gamma[b];
      ComplexVectorExpr rotated = detail::apply_constant_matrix(gg, psi.comps);
      for (int i = 0; i < rep.N; ++i) cov.comps[i] = cov.comps[i] + scale(anti, rotated[i]);
    }
  for (auto& c : cov.comps) c = simplify(c);
  forms.covariant_form = std::move(cov);
  return forms;
}

template <class Points>
double spinor_field_max_difference(const SpinorFieldExpr& a, const SpinorFieldExpr& b,
                                   const Points& points) {
  double worst = 0.0;
  for (const auto& p : points)
    for (int i = 0; i < a.dim(); ++i)
      worst = std::max(worst,
                       std::abs(evaluate_complex(a.comps[i], p) - evaluate_complex(b.comps[i], p)));
  return worst;
}

/// Kosmann spinor Lie derivative. Computes both local forms and insists they
/// agree at every sample point; a disagreement is a convention bug and is
/// surfaced loudly.
template <class Points>
SpinorFieldExpr lie_spinor_kosmann(const VectorFieldExpr& xi, const SpinorFieldExpr& psi,
                                   const MetricField& g, const FrameField& f, const GammaRep& rep,
                                   const Points& points, double tol = 1e-9) {
  KosmannForms forms = lie_spinor_kosmann_forms(xi, psi, g, f, rep, points);
  double diff = spinor_field_max_difference(forms.frame_form, forms.covariant_form, points);
  if (diff > tol)
    throw ConventionError("kosmann spinor derivative: the two local forms disagree by " +
                          std::to_string(diff) + " (tolerance " + std::to_string(tol) + ")");
  return forms.frame_form;
}

/// Penrose spinor Lie derivative (4-spinor form):
///
///   lie^P_xi psi = xi^a nabla_a psi
///                  - (1/4 nabla_[a xi_b] gamma^a gamma^b + 1/4 nabla_c xi^c) psi.
///
/// Stated by the source material for m = 4 only; other even m are accepted
/// with the same 1/4 trace coefficient but flagged experimental.
struct PenroseResult {
  SpinorFieldExpr value;
  bool experimental = false;
};

template <class Points>
PenroseResult lie_spinor_penrose(const VectorFieldExpr& xi, const SpinorFieldExpr& psi,
                                 const MetricField& g, const FrameField& f, const GammaRep& rep,
                                 const Points& points) {
  KosmannForms forms = lie_spinor_kosmann_forms(xi, psi, g, f, rep, points);
  Connection conn = christoffel(g);
  Expr div = divergence(xi, g, conn);
  Expr coeff = simplify(ex_mul(Expr::rational(-1, 4), div));
  PenroseResult out;
  out.experimental = g.chart.dim() != 4;
  out.value = forms.covariant_form;
  for (int i = 0; i < rep.N; ++i)
    out.value.comps[i] = simplify(out.value.comps[i] + scale(coeff, psi.comps[i]));
  return out;
}

}  // namespace gnlie

#endif
