#ifndef GNLIE_CHART_HPP
#define GNLIE_CHART_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

#include "gnlie/expr.hpp"
#include "gnlie/liealg.hpp"

namespace gnlie {

/// A coordinate chart: named coordinates plus the flat signature the
/// orthonormal frames refer to.
struct Chart {
  std::vector<std::string> coords;
  SignatureMetric sig;
  std::vector<int> ids;  // interned symbol ids, parallel to coords

  static Chart make(std::vector<std::string> names, SignatureMetric s) {
    Chart c;
    c.coords = std::move(names);
    c.sig = s;
    std::set<std::string> seen;
    for (const auto& n : c.coords) {
      if (!seen.insert(n).second) throw SceneError("duplicate coordinate name '" + n + "'");
      c.ids.push_back(SymbolTable::id_of(n));
    }
    if (c.dim() < 1) throw SceneError("chart needs at least one coordinate");
    if (c.sig.dim() != c.dim())
      throw SceneError("signature (" + std::to_string(s.p) + "," + std::to_string(s.q) +
                       ") does not match dimension " + std::to_string(c.dim()));
    return c;
  }

  int dim() const { return static_cast<int>(coords.size()); }

  Expr coordinate(int mu) const { return Expr::symbol(coords.at(mu)); }

  PointBinding bind(std::span<const double> values) const {
    if (static_cast<int>(values.size()) != dim())
      throw DimensionError("point has " + std::to_string(values.size()) +
                           " components, chart dimension is " + std::to_string(dim()));
    PointBinding p;
    for (int i = 0; i < dim(); ++i) p.set(ids[i], values[i]);
    return p;
  }

  std::vector<PointBinding> bind_all(const std::vector<std::vector<double>>& pts) const {
    std::vector<PointBinding> out;
    out.reserve(pts.size());
    for (const auto& x : pts) out.push_back(bind(x));
    return out;
  }
};

/// Vector field given by chart components xi^mu(x).
struct VectorFieldExpr {
  std::vector<Expr> comps;

  int dim() const { return static_cast<int>(comps.size()); }
};

}  // namespace gnlie

#endif
