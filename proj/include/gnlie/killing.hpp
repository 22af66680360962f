#ifndef GNLIE_KILLING_HPP
#define GNLIE_KILLING_HPP

#include "gnlie/lie_tensor.hpp"
#include "gnlie/lifts.hpp"

namespace gnlie {

/// Residual matrix together with its max-abs value over the sample battery.
struct ResidualMatrix {
  ExprMatrix matrix;
  double max_norm = 0.0;
};

/// Killing condition: xi is Killing iff lie_xi g = 0.
template <class Points>
ResidualMatrix killing_residual(const VectorFieldExpr& xi, const MetricField& g,
                                const Points& points) {
  ResidualMatrix r;
  r.matrix = lie_derivative_metric(xi, g);
  r.max_norm = max_abs_over_points(r.matrix, points);
  return r;
}

/// Conformal Killing condition: lie_xi g = (2/m) tr(nabla xi) g.
template <class Points>
ResidualMatrix conformal_killing_residual(const VectorFieldExpr& xi, const MetricField& g,
                                          const Connection& conn, const Points& points) {
  const int n = g.chart.dim();
  ExprMatrix lie = lie_derivative_metric(xi, g);
  Expr factor = simplify(ex_mul(Expr::rational(2, n), divergence(xi, g, conn)));
  ResidualMatrix r;
  r.matrix = ExprMatrix(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      r.matrix.at(mu, nu) = simplify(ex_sub(lie.at(mu, nu), ex_mul(factor, g.g.at(mu, nu))));
  r.max_norm = max_abs_over_points(r.matrix, points);
  return r;
}

enum class StructureGroup { SO, CSO, GL };

inline StructureGroup parse_group(const std::string& s) {
  if (s == "so" || s == "SO") return StructureGroup::SO;
  if (s == "cso" || s == "CSO") return StructureGroup::CSO;
  if (s == "gl" || s == "GL") return StructureGroup::GL;
  throw Error("unknown structure group '" + s + "' (expected so, cso or gl)");
}

/// G-Killing condition: the natural lift restricted to the G-structure must
/// equal its generalized Kosmann lift. The residual is the part of the
/// lowered natural-lift coefficients outside the group's algebra:
///   SO  -> symmetric part of (L xi)_{ab},
///   CSO -> traceless symmetric part,
///   GL  -> zero identically (no condition at all).
template <class Points>
ResidualMatrix g_killing_residual(const VectorFieldExpr& xi, const FrameField& f,
                                  StructureGroup group, const Points& points) {
  const int n = f.chart.dim();
  ResidualMatrix r;
  r.matrix = ExprMatrix(n, n);
  if (group == StructureGroup::GL) {
    r.max_norm = 0.0;
    return r;
  }
  LiftCoefficients nat = natural_lift_coeffs(xi, f);
  ExprMatrix sym(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      sym.at(a, b) = simplify(
          ex_mul(Expr::rational(1, 2), ex_add(nat.Xi.at(a, b), nat.Xi.at(b, a))));
  if (group == StructureGroup::SO) {
    r.matrix = sym;
  } else {  // CSO: remove the trace part (1/m) eta^{cd} (L xi)_{cd} eta_{ab}
    Expr tr = Expr::integer(0);
    for (int c = 0; c < n; ++c)
      tr = ex_add(tr, ex_mul(Expr::integer(f.chart.sig.eta(c) < 0 ? -1 : 1), nat.Xi.at(c, c)));
    Expr scale = simplify(ex_div(tr, Expr::integer(n)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Expr part = sym.at(a, b);
        if (a == b)
          part = ex_sub(part, ex_mul(scale, Expr::integer(f.chart.sig.eta(a) < 0 ? -1 : 1)));
        r.matrix.at(a, b) = simplify(part);
      }
  }
  r.max_norm = max_abs_over_points(r.matrix, points);
  return r;
}

/// Reductive Lie derivative of the metric with respect to the Kosmann part
/// of the lift,
///
///   xi^rho d_rho g_{mu nu} + 2 g_{rho(mu} K^rho_{nu)},
///   K^rho_nu = e_a^rho Xi^a_b theta^b_nu + xi^sigma (d_sigma e_b^rho) theta^b_nu,
///
/// which vanishes identically for every xi. The operation exists to witness
/// that fact numerically, not to produce data.
template <class Points>
ResidualMatrix reductive_metric_lie(const LiftCoefficients& lift, const MetricField& g,
                                    const FrameField& f, const Points& points) {
  if (lift.flavor != LiftFlavor::kosmann)
    throw Error(std::string("reductive_metric_lie: expected kosmann coefficients, got ") +
                flavor_name(lift.flavor));
  const int n = g.chart.dim();

  // xi^mu = e_a^mu xi^a
  VectorFieldExpr xi;
  xi.comps.resize(n);
  for (int mu = 0; mu < n; ++mu) {
    Expr s = Expr::integer(0);
    for (int a = 0; a < n; ++a) s = ex_add(s, ex_mul(f.frame.at(a, mu), lift.xi_frame[a]));
    xi.comps[mu] = simplify(s);
  }

  // K^rho_nu
  ExprMatrix k(n, n);
  for (int rho = 0; rho < n; ++rho)
    for (int nu = 0; nu < n; ++nu) {
      Expr s = Expr::integer(0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          // Xi^a_b = eta^{aa} Xi_{ab}
          Expr up = lift.Xi.at(a, b);
          if (f.chart.sig.eta(a) < 0) up = ex_neg(up);
          s = ex_add(s, ex_mul(f.frame.at(a, rho), ex_mul(up, f.coframe.at(b, nu))));
        }
      for (int b = 0; b < n; ++b)
        for (int sg = 0; sg < n; ++sg)
          s = ex_add(s, ex_mul(xi.comps[sg],
                               ex_mul(differentiate(f.frame.at(b, rho), g.chart.ids[sg]),
                                      f.coframe.at(b, nu))));
      k.at(rho, nu) = simplify(s);
    }

  ResidualMatrix r;
  r.matrix = ExprMatrix(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Expr v = detail::directional(xi, g.chart, g.g.at(mu, nu));
      for (int rho = 0; rho < n; ++rho) {
        v = ex_add(v, ex_mul(g.g.at(rho, mu), k.at(rho, nu)));
        v = ex_add(v, ex_mul(g.g.at(rho, nu), k.at(rho, mu)));
      }
      r.matrix.at(mu, nu) = simplify(v);
    }
  r.max_norm = max_abs_over_points(r.matrix, points);
  return r;
}

}  // namespace gnlie

#endif
