#ifndef GNLIE_LIE_TENSOR_HPP
#define GNLIE_LIE_TENSOR_HPP

#include "gnlie/metric.hpp"

namespace gnlie {

/// Tensor density of valence (r,s) and weight w, components stored row-major
/// with upper indices first. Symbolic support stops at r+s <= 2; higher
/// valence goes through the numeric oracle only.
struct TensorFieldExpr {
  Chart chart;
  int r = 0;
  int s = 0;
  double weight = 0.0;
  std::vector<Expr> comps;

  int rank() const { return r + s; }

  std::size_t size() const {
    std::size_t n = 1;
    for (int k = 0; k < rank(); ++k) n *= static_cast<std::size_t>(chart.dim());
    return n;
  }

  // index helpers for rank <= 2
  const Expr& at() const { return comps.at(0); }
  const Expr& at(int i) const { return comps.at(i); }
  const Expr& at(int i, int j) const { return comps.at(static_cast<std::size_t>(i) * chart.dim() + j); }
  Expr& at() { return comps.at(0); }
  Expr& at(int i) { return comps.at(i); }
  Expr& at(int i, int j) { return comps.at(static_cast<std::size_t>(i) * chart.dim() + j); }

  static TensorFieldExpr scalar(const Chart& c, Expr e, double w = 0.0) {
    TensorFieldExpr t{c, 0, 0, w, {std::move(e)}};
    return t;
  }

  static TensorFieldExpr vector(const Chart& c, std::vector<Expr> comps, double w = 0.0) {
    if (static_cast<int>(comps.size()) != c.dim())
      throw DimensionError("tensor components do not match chart dimension");
    return TensorFieldExpr{c, 1, 0, w, std::move(comps)};
  }

  static TensorFieldExpr covector(const Chart& c, std::vector<Expr> comps, double w = 0.0) {
    if (static_cast<int>(comps.size()) != c.dim())
      throw DimensionError("tensor components do not match chart dimension");
    return TensorFieldExpr{c, 0, 1, w, std::move(comps)};
  }

  static TensorFieldExpr covariant2(const Chart& c, ExprMatrix m, double w = 0.0) {
    TensorFieldExpr t{c, 0, 2, w, {}};
    t.comps.reserve(static_cast<std::size_t>(c.dim()) * c.dim());
    for (int i = 0; i < c.dim(); ++i)
      for (int j = 0; j < c.dim(); ++j) t.comps.push_back(m.at(i, j));
    return t;
  }
};

namespace detail {

inline Expr directional(const VectorFieldExpr& xi, const Chart& c, const Expr& f) {
  Expr s = Expr::integer(0);
  for (int mu = 0; mu < c.dim(); ++mu)
    s = ex_add(s, ex_mul(xi.comps[mu], differentiate(f, c.ids[mu])));
  return s;
}

inline Expr coordinate_divergence(const VectorFieldExpr& xi, const Chart& c) {
  Expr s = Expr::integer(0);
  for (int mu = 0; mu < c.dim(); ++mu) s = ex_add(s, differentiate(xi.comps[mu], c.ids[mu]));
  return s;
}

}  // namespace detail

/// Natural Lie derivative of the metric,
///   (lie_xi g)_{mu nu} = xi^rho d_rho g_{mu nu} + 2 g_{rho(mu} d_{nu)} xi^rho,
/// which also equals 2 nabla_(mu xi_nu).
inline ExprMatrix lie_derivative_metric(const VectorFieldExpr& xi, const MetricField& g) {
  const int n = g.chart.dim();
  if (xi.dim() != n) throw DimensionError("lie_derivative_metric: dimension mismatch");
  ExprMatrix out(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu; nu < n; ++nu) {
      Expr v = detail::directional(xi, g.chart, g.g.at(mu, nu));
      for (int rho = 0; rho < n; ++rho) {
        v = ex_add(v, ex_mul(g.g.at(rho, mu), differentiate(xi.comps[rho], g.chart.ids[nu])));
        v = ex_add(v, ex_mul(g.g.at(rho, nu), differentiate(xi.comps[rho], g.chart.ids[mu])));
      }
      v = simplify(v);
      out.at(mu, nu) = v;
      out.at(nu, mu) = v;
    }
  return out;
}

/// Standard Lie derivative of a tensor density of valence (r,s), weight w:
/// transport term, one lift term per index, plus w (d_rho xi^rho) T.
inline TensorFieldExpr lie_derivative_tensor_density(const VectorFieldExpr& xi,
                                                     const TensorFieldExpr& t) {
  const Chart& c = t.chart;
  const int n = c.dim();
  if (xi.dim() != n) throw DimensionError("lie_derivative_tensor_density: dimension mismatch");
  if (t.rank() > 2)
    throw Error("lie_derivative_tensor_density: valence r+s = " + std::to_string(t.rank()) +
                " not supported symbolically (use the numeric oracle)");

  TensorFieldExpr out = t;
  Expr wdiv = Expr::integer(0);
  if (t.weight != 0.0) {
    Expr w = (t.weight == std::nearbyint(t.weight))
                 ? Expr::integer(static_cast<long long>(t.weight))
                 : Expr::real(t.weight);
    wdiv = ex_mul(w, detail::coordinate_divergence(xi, c));
  }
  auto weight_term = [&](const Expr& comp) -> Expr { return ex_mul(wdiv, comp); };

  if (t.rank() == 0) {
    out.at() = simplify(ex_add(detail::directional(xi, c, t.at()), weight_term(t.at())));
    return out;
  }

  if (t.rank() == 1) {
    for (int i = 0; i < n; ++i) {
      Expr v = detail::directional(xi, c, t.at(i));
      for (int rho = 0; rho < n; ++rho) {
        if (t.r == 1)  // upper index: - T^rho d_rho xi^i
          v = ex_sub(v, ex_mul(t.at(rho), differentiate(xi.comps[i], c.ids[rho])));
        else  // lower index: + T_rho d_i xi^rho
          v = ex_add(v, ex_mul(t.at(rho), differentiate(xi.comps[rho], c.ids[i])));
      }
      out.at(i) = simplify(ex_add(v, weight_term(t.at(i))));
    }
    return out;
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr v = detail::directional(xi, c, t.at(i, j));
      for (int rho = 0; rho < n; ++rho) {
        if (t.r == 2) {
          v = ex_sub(v, ex_mul(t.at(rho, j), differentiate(xi.comps[i], c.ids[rho])));
          v = ex_sub(v, ex_mul(t.at(i, rho), differentiate(xi.comps[j], c.ids[rho])));
        } else if (t.r == 1) {  // T^i_j
          v = ex_sub(v, ex_mul(t.at(rho, j), differentiate(xi.comps[i], c.ids[rho])));
          v = ex_add(v, ex_mul(t.at(i, rho), differentiate(xi.comps[rho], c.ids[j])));
        } else {
          v = ex_add(v, ex_mul(t.at(rho, j), differentiate(xi.comps[rho], c.ids[i])));
          v = ex_add(v, ex_mul(t.at(i, rho), differentiate(xi.comps[rho], c.ids[j])));
        }
      }
      out.at(i, j) = simplify(ex_add(v, weight_term(t.at(i, j))));
    }
  return out;
}

/// Covariant divergence nabla_c xi^c = d_mu xi^mu + Gamma^mu_{mu rho} xi^rho.
inline Expr divergence(const VectorFieldExpr& xi, const MetricField& g, const Connection& conn) {
  const int n = g.chart.dim();
  Expr s = detail::coordinate_divergence(xi, g.chart);
  for (int mu = 0; mu < n; ++mu)
    for (int rho = 0; rho < n; ++rho)
      s = ex_add(s, ex_mul(conn.at(mu, mu, rho), xi.comps[rho]));
  return simplify(s);
}

}  // namespace gnlie

#endif
