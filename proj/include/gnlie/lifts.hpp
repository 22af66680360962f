#ifndef GNLIE_LIFTS_HPP
#define GNLIE_LIFTS_HPP

#include "gnlie/frame.hpp"

namespace gnlie {

enum class LiftFlavor { natural, kosmann, penrose, custom };

inline const char* flavor_name(LiftFlavor f) {
  switch (f) {
    case LiftFlavor::natural: return "natural";
    case LiftFlavor::kosmann: return "kosmann";
    case LiftFlavor::penrose: return "penrose";
    case LiftFlavor::custom: return "custom";
  }
  return "?";
}

/// Local data of an invariant vector field on the frame bundle: the frame
/// components xi^a of the base field plus an algebra-valued part Xi_{ab}
/// (eta-lowered). For the natural flavor Xi is the full lowered coefficient
/// matrix; for the kosmann flavor it is antisymmetric; the penrose flavor
/// additionally carries the trace scalar split off by the cso projection.
struct LiftCoefficients {
  LiftFlavor flavor = LiftFlavor::custom;
  std::vector<Expr> xi_frame;  // xi^a
  ExprMatrix Xi;               // Xi_{ab}
  Expr trace_scalar = Expr::integer(0);
  ExprMatrix L_upper;          // natural-lift coefficients (L xi)^a_b, kept by all flavors
};

/// Natural-lift coefficients in the given frame gauge:
///
///   (L xi)^a_b = theta^a_rho (d_nu xi^rho e_b^nu - xi^nu d_nu e_b^rho),
///   xi^a       = theta^a_mu xi^mu,
///
/// with Xi_{ab} = eta_{ac} (L xi)^c_b.
inline LiftCoefficients natural_lift_coeffs(const VectorFieldExpr& xi, const FrameField& f) {
  const int n = f.chart.dim();
  if (xi.dim() != n) throw DimensionError("natural_lift_coeffs: field/chart dimension mismatch");

  LiftCoefficients out;
  out.flavor = LiftFlavor::natural;
  out.xi_frame.resize(n);
  for (int a = 0; a < n; ++a) {
    Expr s = Expr::integer(0);
    for (int mu = 0; mu < n; ++mu) s = ex_add(s, ex_mul(f.coframe.at(a, mu), xi.comps[mu]));
    out.xi_frame[a] = simplify(s);
  }

  out.L_upper = ExprMatrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Expr s = Expr::integer(0);
      for (int rho = 0; rho < n; ++rho) {
        Expr transport = Expr::integer(0);
        for (int nu = 0; nu < n; ++nu) {
          transport = ex_add(
              transport, ex_mul(differentiate(xi.comps[rho], f.chart.ids[nu]), f.frame.at(b, nu)));
          transport = ex_sub(
              transport, ex_mul(xi.comps[nu], differentiate(f.frame.at(b, rho), f.chart.ids[nu])));
        }
        s = ex_add(s, ex_mul(f.coframe.at(a, rho), transport));
      }
      out.L_upper.at(a, b) = simplify(s);
    }

  out.Xi = ExprMatrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Expr v = out.L_upper.at(a, b);
      out.Xi.at(a, b) = f.chart.sig.eta(a) < 0 ? ex_neg(v) : v;
    }
  return out;
}

/// Kosmann coefficients: the so(p,q) projection of the lowered natural
/// coefficients, Xi_{ab} = (L xi)_{[ab]} with weight-1/2 antisymmetrization.
inline LiftCoefficients kosmann_coeffs(const VectorFieldExpr& xi, const FrameField& f) {
  LiftCoefficients nat = natural_lift_coeffs(xi, f);
  const int n = f.chart.dim();
  LiftCoefficients out;
  out.flavor = LiftFlavor::kosmann;
  out.xi_frame = nat.xi_frame;
  out.L_upper = nat.L_upper;
  out.Xi = ExprMatrix(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.Xi.at(a, b) = simplify(
          ex_mul(Expr::rational(1, 2), ex_sub(nat.Xi.at(a, b), nat.Xi.at(b, a))));
  return out;
}

/// Penrose coefficients: the cso(p,q) = so(p,q) + R projection. Keeps the
/// antisymmetric part and the trace scalar (1/m) (L xi)^c_c; the traceless
/// symmetric remainder is discarded.
inline LiftCoefficients penrose_coeffs(const VectorFieldExpr& xi, const FrameField& f) {
  LiftCoefficients out = kosmann_coeffs(xi, f);
  out.flavor = LiftFlavor::penrose;
  const int n = f.chart.dim();
  Expr tr = Expr::integer(0);
  for (int c = 0; c < n; ++c) tr = ex_add(tr, out.L_upper.at(c, c));
  out.trace_scalar = simplify(ex_div(tr, Expr::integer(n)));
  return out;
}

/// Max |Xi_{ab} + Xi_{ba}| over points: the antisymmetry witness for
/// so-flavored coefficients.
template <class Points>
double antisymmetry_residual(const LiftCoefficients& lift, const Points& points) {
  double worst = 0.0;
  const int n = lift.Xi.rows();
  for (const auto& p : points)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        worst = std::max(worst,
                         std::abs(evaluate(lift.Xi.at(a, b), p) + evaluate(lift.Xi.at(b, a), p)));
  return worst;
}

}  // namespace gnlie

#endif
