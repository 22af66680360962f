#ifndef GNLIE_SCENE_HPP
#define GNLIE_SCENE_HPP

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "gnlie/lie_spinor.hpp"
#include "gnlie/parse.hpp"

namespace gnlie {

struct Tolerances {
  double symbolic = 1e-12;  // symbolic-identity checks
  double mixed = 1e-9;      // mixed symbolic/numeric checks
  double oracle = 1e-6;     // flow-oracle comparisons
};

/// A fully validated problem description: chart, metric, frame, named vector
/// fields, optional spinor, and the evaluation-point battery.
struct Scene {
  Chart chart;
  MetricField metric;
  FrameField frame;
  bool frame_from_file = false;
  std::map<std::string, VectorFieldExpr> vector_fields;
  std::optional<SpinorFieldExpr> spinor;
  std::vector<std::vector<double>> points;
  std::vector<PointBinding> bindings;
  Tolerances tol;
  std::string hash;  // FNV-1a of the source bytes, or a tag for built-ins

  const VectorFieldExpr& field(const std::string& name) const {
    auto it = vector_fields.find(name);
    if (it == vector_fields.end()) {
      std::string known;
      for (const auto& kv : vector_fields) known += (known.empty() ? "" : ", ") + kv.first;
      throw SceneError("unknown vector field '" + name + "' (scene has: " + known + ")");
    }
    return it->second;
  }
};

inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline Expr parse_scene_expr(const std::string& text, const Chart& chart,
                             const std::string& where) {
  Expr e;
  try {
    e = parse(text);
  } catch (const ParseError& err) {
    throw SceneError(where + ": " + err.what());
  }
  for (int id : free_symbols(e)) {
    bool known = false;
    for (int cid : chart.ids) known = known || cid == id;
    if (!known)
      throw SceneError(where + ": expression uses symbol '" + SymbolTable::name_of(id) +
                       "' which is not a coordinate of this chart");
  }
  return e;
}

}  // namespace detail

/// Parses and validates the scene JSON (schema 1). Field names are part of
/// the exchange contract; see the shipped scene files for the layout.
inline Scene scene_from_json(const nlohmann::json& j, const std::string& source_bytes) {
  if (!j.is_object()) throw SceneError("scene root must be a JSON object");
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1)
    throw SceneError("scene must declare \"schema\": 1");
  for (const char* key : {"dimension", "signature", "coordinates", "metric", "points"})
    if (!j.contains(key)) throw SceneError(std::string("scene is missing \"") + key + "\"");

  const int m = j["dimension"].get<int>();
  auto sig_arr = j["signature"];
  if (!sig_arr.is_array() || sig_arr.size() != 2) throw SceneError("\"signature\" must be [p, q]");
  SignatureMetric sig{sig_arr[0].get<int>(), sig_arr[1].get<int>()};

  std::vector<std::string> coords = j["coordinates"].get<std::vector<std::string>>();
  if (static_cast<int>(coords.size()) != m)
    throw SceneError("coordinate count does not match \"dimension\"");
  Chart chart = Chart::make(coords, sig);

  // metric: map "munu" -> expr string, completed symmetrically
  ExprMatrix g(m, m);
  std::vector<std::vector<bool>> given(m, std::vector<bool>(m, false));
  for (const auto& [key, val] : j["metric"].items()) {
    if (key.size() != 2 || !std::isdigit(static_cast<unsigned char>(key[0])) ||
        !std::isdigit(static_cast<unsigned char>(key[1])))
      throw SceneError("metric key '" + key + "' must be two digits, e.g. \"01\"");
    int mu = key[0] - '0', nu = key[1] - '0';
    if (mu >= m || nu >= m) throw SceneError("metric key '" + key + "' out of range");
    Expr e = detail::parse_scene_expr(val.get<std::string>(), chart, "metric[" + key + "]");
    if (given[nu][mu] && !structurally_equal(simplify(e), simplify(g.at(nu, mu))))
      throw SceneError("metric entries " + key + " and its transpose disagree");
    g.at(mu, nu) = e;
    given[mu][nu] = true;
    if (!given[nu][mu]) {
      g.at(nu, mu) = e;
      given[nu][mu] = true;
    }
  }
  for (int mu = 0; mu < m; ++mu)
    for (int nu = 0; nu < m; ++nu)
      if (!given[mu][nu] && mu == nu)
        throw SceneError("metric is missing diagonal entry \"" + std::to_string(mu) +
                         std::to_string(nu) + "\"");
  MetricField metric = MetricField::make(chart, g);

  Scene scene{chart, metric, FrameField{}, false, {}, std::nullopt, {}, {}, Tolerances{}, ""};

  // points
  for (const auto& pt : j["points"]) {
    std::vector<double> x = pt.get<std::vector<double>>();
    if (static_cast<int>(x.size()) != m)
      throw SceneError("evaluation point has wrong dimension");
    scene.points.push_back(std::move(x));
  }
  if (scene.points.empty()) throw SceneError("scene needs at least one evaluation point");
  scene.bindings = chart.bind_all(scene.points);
  for (const auto& p : scene.bindings) metric.check_signature_at(p);

  // frame: explicit or canonical diagonal construction
  if (j.contains("frame")) {
    auto rows = j["frame"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != m)
      throw SceneError("\"frame\" must be an m x m matrix of expression strings");
    FrameField f{chart, ExprMatrix(m, m), ExprMatrix(m, m)};
    for (int a = 0; a < m; ++a) {
      if (static_cast<int>(rows[a].size()) != m) throw SceneError("frame row has wrong length");
      for (int mu = 0; mu < m; ++mu)
        f.frame.at(a, mu) = detail::parse_scene_expr(rows[a][mu].get<std::string>(), chart,
                                                     "frame[" + std::to_string(a) + "]");
    }
    // coframe theta^a_mu = eta^{ab} g_{mu nu} e_b^nu
    for (int a = 0; a < m; ++a)
      for (int mu = 0; mu < m; ++mu) {
        Expr s = Expr::integer(0);
        for (int nu = 0; nu < m; ++nu)
          s = ex_add(s, ex_mul(metric.g.at(mu, nu), f.frame.at(a, nu)));
        if (sig.eta(a) < 0) s = ex_neg(s);
        f.coframe.at(a, mu) = simplify(s);
      }
    scene.frame = std::move(f);
    scene.frame_from_file = true;
  } else {
    if (!metric.diagonal())
      throw SceneError(
          "non-diagonal metric requires an explicit \"frame\" (symbolic frames are only "
          "constructed for diagonal metrics)");
    scene.frame = orthonormal_frame(metric);
  }
  double fr = frame_residual(metric, scene.frame, scene.bindings);
  if (fr > 1e-10)
    throw SceneError("frame fails orthonormality/duality at sample points (residual " +
                     std::to_string(fr) + ")");

  // vector fields
  if (j.contains("vector_fields"))
    for (const auto& [name, arr] : j["vector_fields"].items()) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != m)
        throw SceneError("vector field '" + name + "' must have " + std::to_string(m) +
                         " components");
      VectorFieldExpr v;
      for (const auto& comp : arr)
        v.comps.push_back(
            detail::parse_scene_expr(comp.get<std::string>(), chart, "vector_fields." + name));
      scene.vector_fields.emplace(name, std::move(v));
    }

  // spinor
  if (j.contains("spinor")) {
    if (m % 2 != 0) throw SceneError("spinor fields need an even-dimensional chart");
    const int N = 1 << (m / 2);
    const auto& sp = j["spinor"];
    if (!sp.contains("re") || !sp.contains("im"))
      throw SceneError("\"spinor\" must have \"re\" and \"im\" arrays");
    if (static_cast<int>(sp["re"].size()) != N || static_cast<int>(sp["im"].size()) != N)
      throw SceneError("spinor needs " + std::to_string(N) + " components for this signature");
    SpinorFieldExpr psi;
    for (int i = 0; i < N; ++i) {
      ComplexExpr c;
      c.re = detail::parse_scene_expr(sp["re"][i].get<std::string>(), chart, "spinor.re");
      c.im = detail::parse_scene_expr(sp["im"][i].get<std::string>(), chart, "spinor.im");
      psi.comps.push_back(c);
    }
    scene.spinor = std::move(psi);
  }

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (t.contains("symbolic")) scene.tol.symbolic = t["symbolic"].get<double>();
    if (t.contains("mixed")) scene.tol.mixed = t["mixed"].get<double>();
    if (t.contains("oracle")) scene.tol.oracle = t["oracle"].get<double>();
  }

  scene.hash = fnv1a_hex(source_bytes);
  return scene;
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("cannot open scene file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string bytes = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("scene file is not valid JSON: ") + e.what());
  }
  try {
    return scene_from_json(j, bytes);
  } catch (const SceneError&) {
    throw;
  } catch (const std::exception& e) {
    throw SceneError(std::string("malformed scene: ") + e.what());
  }
}

}  // namespace gnlie

#endif
