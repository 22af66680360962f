#ifndef GNLIE_BUILTIN_SCENES_HPP
#define GNLIE_BUILTIN_SCENES_HPP

#include "gnlie/scene.hpp"

namespace gnlie {

/// Deterministic quasi-random points: Halton sequence mapped into a box that
/// stays clear of coordinate singularities.
inline std::vector<std::vector<double>> halton_points(int count,
                                                      const std::vector<std::pair<double, double>>& box,
                                                      int skip = 1) {
  static const int primes[] = {2, 3, 5, 7, 11, 13};
  const int dim = static_cast<int>(box.size());
  std::vector<std::vector<double>> out;
  for (int k = skip; k < skip + count; ++k) {
    std::vector<double> x(dim);
    for (int d = 0; d < dim; ++d) {
      int base = primes[d];
      double u = 0.0, f = 1.0 / base;
      int i = k;
      while (i > 0) {
        u += f * (i % base);
        i /= base;
        f /= base;
      }
      x[d] = box[d].first + u * (box[d].second - box[d].first);
    }
    out.push_back(std::move(x));
  }
  return out;
}

namespace detail {

inline nlohmann::json points_json(const std::vector<std::vector<double>>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : pts) arr.push_back(x);
  return arr;
}

}  // namespace detail

/// Minkowski space with the ten Poincare generators, the dilation, and one
/// special conformal generator (b along x0).
inline nlohmann::json minkowski_scene_json() {
  nlohmann::json j;
  j["schema"] = 1;
  j["dimension"] = 4;
  j["signature"] = {1, 3};
  j["coordinates"] = {"x0", "x1", "x2", "x3"};
  j["metric"] = {{"00", "1"}, {"11", "-1"}, {"22", "-1"}, {"33", "-1"}};
  nlohmann::json vf;
  vf["trans0"] = {"1", "0", "0", "0"};
  vf["trans1"] = {"0", "1", "0", "0"};
  vf["trans2"] = {"0", "0", "1", "0"};
  vf["trans3"] = {"0", "0", "0", "1"};
  vf["rot12"] = {"0", "-x2", "x1", "0"};
  vf["rot13"] = {"0", "-x3", "0", "x1"};
  vf["rot23"] = {"0", "0", "-x3", "x2"};
  vf["boost01"] = {"x1", "x0", "0", "0"};
  vf["boost02"] = {"x2", "0", "x0", "0"};
  vf["boost03"] = {"x3", "0", "0", "x0"};
  vf["dilation"] = {"x0", "x1", "x2", "x3"};
  // xi^mu = 2 x^mu (b.x) - (x.x) b^mu for b = d/dx0
  vf["conformal0"] = {"2*x0*x0 - (x0^2 - x1^2 - x2^2 - x3^2)", "2*x1*x0", "2*x2*x0", "2*x3*x0"};
  j["vector_fields"] = vf;
  j["spinor"] = {{"re", {"1", "x1", "0", "x0"}}, {"im", {"0", "0", "1/2", "x2"}}};
  j["points"] = detail::points_json(
      halton_points(20, {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}));
  return j;
}

/// Round sphere in polar coordinates with its three rotation generators plus
/// the non-Killing coordinate field d/dtheta.
inline nlohmann::json sphere_scene_json() {
  nlohmann::json j;
  j["schema"] = 1;
  j["dimension"] = 2;
  j["signature"] = {2, 0};
  j["coordinates"] = {"x0", "x1"};  // theta, phi
  j["metric"] = {{"00", "1"}, {"11", "sin(x0)^2"}};
  nlohmann::json vf;
  vf["rot_z"] = {"0", "1"};
  vf["rot_x"] = {"sin(x1)", "cos(x0)/sin(x0)*cos(x1)"};
  vf["rot_y"] = {"cos(x1)", "-(cos(x0)/sin(x0))*sin(x1)"};
  vf["theta"] = {"1", "0"};
  j["vector_fields"] = vf;
  j["spinor"] = {{"re", {"1", "x0"}}, {"im", {"0", "x1/2"}}};
  j["points"] = detail::points_json(halton_points(20, {{0.2, 2.9415926535897932}, {0.1, 6.1}}));
  return j;
}

/// Euclidean plane in polar coordinates.
inline nlohmann::json polar_scene_json() {
  nlohmann::json j;
  j["schema"] = 1;
  j["dimension"] = 2;
  j["signature"] = {2, 0};
  j["coordinates"] = {"x0", "x1"};  // r, phi
  j["metric"] = {{"00", "1"}, {"11", "x0^2"}};
  nlohmann::json vf;
  vf["rotation"] = {"0", "1"};
  vf["radial"] = {"x0", "0"};
  vf["trans_x"] = {"cos(x1)", "-sin(x1)/x0"};
  j["vector_fields"] = vf;
  j["spinor"] = {{"re", {"1", "0"}}, {"im", {"0", "1"}}};
  j["points"] = detail::points_json(halton_points(20, {{0.5, 2.0}, {0.1, 6.1}}));
  return j;
}

inline Scene builtin_scene(const std::string& name) {
  nlohmann::json j;
  if (name == "minkowski")
    j = minkowski_scene_json();
  else if (name == "sphere")
    j = sphere_scene_json();
  else if (name == "polar")
    j = polar_scene_json();
  else
    throw SceneError("unknown built-in scene '" + name + "'");
  Scene s = scene_from_json(j, "");
  s.hash = fnv1a_hex("builtin:" + name + ":v1");
  return s;
}

}  // namespace gnlie

#endif
