// Command-line front end: loads a scene, dispatches to one library
// operation chain, and emits a pass/fail report. Exit codes: 0 all checks
// within tolerance, 1 a residual exceeded tolerance, 2 malformed input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnlie/battery.hpp"

namespace {

using namespace gnlie;

struct CommonOpts {
  bool json = false;
  std::uint64_t seed = 42;
  std::optional<double> tol;
};

int emit(const Report& rep, const CommonOpts& opts, double ms) {
  if (opts.json)
    std::cout << rep.to_json();
  else
    std::cout << rep.to_text();
  std::cerr << "elapsed " << ms << " ms\n";
  return rep.passed() ? 0 : 1;
}

std::string print_matrix(const ExprMatrix& m) {
  std::string out = "[";
  for (int i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += "\"" + to_string(m.at(i, j)) + "\"";
    }
    out += "]";
  }
  return out + "]";
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open matrix file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw SceneError("matrix file must be an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw SceneError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

SignatureMetric parse_signature(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw SceneError("signature must be given as p,q (e.g. 1,3)");
  try {
    return SignatureMetric{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw SceneError("signature must be given as p,q (e.g. 1,3)");
  }
}

std::string spinor_values_str(const SpinorFieldExpr& psi, const PointBinding& p) {
  std::string out = "[";
  for (int i = 0; i < psi.dim(); ++i) {
    auto v = evaluate_complex(psi.comps[i], p);
    if (i) out += ", ";
    out += Report::num(v.real()) + (v.imag() < 0 ? "" : "+") + Report::num(v.imag()) + "i";
  }
  return out + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie derivatives of tensor, density and spinor fields on chart-described "
               "pseudo-Riemannian manifolds"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_flag("--json", opts.json, "emit the report as JSON on stdout");
  app.add_option("--seed", opts.seed, "seed for randomized batteries")->default_val(42);
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "override the check tolerance");

  std::string scene_path, field, group = "so", lift = "kosmann", target = "metric";
  std::string matrix_path, coeffs_path, signature;
  bool with_oracle = false;

  auto* killing = app.add_subcommand("check-killing", "Killing condition for a vector field");
  killing->add_option("scene", scene_path)->required();
  killing->add_option("--field", field)->required();

  auto* conformal =
      app.add_subcommand("check-conformal", "conformal Killing condition for a vector field");
  conformal->add_option("scene", scene_path)->required();
  conformal->add_option("--field", field)->required();

  auto* gkilling = app.add_subcommand("check-gkilling", "G-Killing condition (so, cso or gl)");
  gkilling->add_option("scene", scene_path)->required();
  gkilling->add_option("--field", field)->required();
  gkilling->add_option("--group", group)->required();

  auto* lie_tensor = app.add_subcommand("lie-tensor", "Lie derivative of a tensor density");
  lie_tensor->add_option("scene", scene_path)->required();
  lie_tensor->add_option("--field", field)->required();
  lie_tensor->add_option("--target", target,
                         "metric | scalar:<expr>[:w=<weight>] | vector:<name>");
  lie_tensor->add_flag("--oracle", with_oracle, "cross-check against the flow oracle");

  auto* lie_spinor = app.add_subcommand("lie-spinor", "Lie derivative of the scene spinor");
  lie_spinor->add_option("scene", scene_path)->required();
  lie_spinor->add_option("--field", field)->required();
  lie_spinor->add_option("--lift", lift, "kosmann | penrose | general");
  lie_spinor->add_option("--coeffs", coeffs_path,
                         "JSON file with xi_frame[] and Xi[][] for --lift general");

  auto* decomp = app.add_subcommand("decompose-matrix", "reductive decomposition of a matrix");
  decomp->add_option("--matrix", matrix_path)->required();
  decomp->add_option("--signature", signature)->required();

  auto* clifford = app.add_subcommand("verify-clifford", "Clifford relations for a signature");
  clifford->add_option("--signature", signature)->required();

  auto* projectors =
      app.add_subcommand("verify-projectors", "split-structure projector axioms for a signature");
  projectors->add_option("--signature", signature)->required();

  app.add_subcommand("selftest", "run the full invariant battery");

  // global flags (--json, --seed, --tol) may appear after the subcommand
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // malformed input
  }
  if (*tol_opt) opts.tol = tol_value;

  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  Report rep;
  try {
    if (app.got_subcommand(killing)) {
      Scene s = load_scene(scene_path);
      rep.command = "check-killing --field " + field;
      rep.scene_hash = s.hash;
      double tol = opts.tol.value_or(s.tol.symbolic);
      auto res = killing_residual(s.field(field), s.metric, s.bindings);
      rep.checks.push_back({"killing-residual", res.max_norm, tol, res.max_norm <= tol});
      rep.extras.emplace_back("residual_matrix", print_matrix(res.matrix));
    } else if (app.got_subcommand(conformal)) {
      Scene s = load_scene(scene_path);
      rep.command = "check-conformal --field " + field;
      rep.scene_hash = s.hash;
      double tol = opts.tol.value_or(s.tol.mixed);
      Connection conn = christoffel(s.metric);
      auto res = conformal_killing_residual(s.field(field), s.metric, conn, s.bindings);
      rep.checks.push_back({"conformal-killing-residual", res.max_norm, tol, res.max_norm <= tol});
      rep.extras.emplace_back("residual_matrix", print_matrix(res.matrix));
    } else if (app.got_subcommand(gkilling)) {
      Scene s = load_scene(scene_path);
      rep.command = "check-gkilling --field " + field + " --group " + group;
      rep.scene_hash = s.hash;
      double tol = opts.tol.value_or(s.tol.symbolic);
      auto res = g_killing_residual(s.field(field), s.frame, parse_group(group), s.bindings);
      rep.checks.push_back({"gkilling-residual", res.max_norm, tol, res.max_norm <= tol});
      rep.extras.emplace_back("residual_matrix", print_matrix(res.matrix));
    } else if (app.got_subcommand(lie_tensor)) {
      Scene s = load_scene(scene_path);
      rep.command = "lie-tensor --field " + field + " --target " + target;
      rep.scene_hash = s.hash;
      const VectorFieldExpr& xi = s.field(field);

      TensorFieldExpr t = TensorFieldExpr::scalar(s.chart, Expr::integer(0));
      if (target == "metric") {
        t = TensorFieldExpr::covariant2(s.chart, s.metric.g);
      } else if (target.rfind("scalar:", 0) == 0) {
        std::string spec = target.substr(7);
        double w = 0.0;
        auto wpos = spec.rfind(":w=");
        if (wpos != std::string::npos) {
          w = std::stod(spec.substr(wpos + 3));
          spec = spec.substr(0, wpos);
        }
        t = TensorFieldExpr::scalar(s.chart,
                                    simplify(detail::parse_scene_expr(spec, s.chart, "--target")),
                                    w);
      } else if (target.rfind("vector:", 0) == 0) {
        t = TensorFieldExpr::vector(s.chart, s.field(target.substr(7)).comps);
      } else {
        throw SceneError("unknown --target '" + target +
                         "' (expected metric, scalar:<expr>[:w=<weight>] or vector:<name>)");
      }

      TensorFieldExpr lie = lie_derivative_tensor_density(xi, t);
      std::string comps = "[";
      for (std::size_t k = 0; k < lie.comps.size(); ++k)
        comps += (k ? ",\"" : "\"") + to_string(lie.comps[k]) + "\"";
      rep.extras.emplace_back("lie_derivative", comps + "]");

      if (with_oracle) {
        double tol = opts.tol.value_or(s.tol.oracle);
        FlowConfig cfg = FlowConfig::make(0.0025, 32);
        double worst = 0.0;
        for (const auto& x : s.points) {
          PointBinding p = s.chart.bind(x);
          std::vector<double> num = numeric_lie_tensor(xi, t, x, cfg);
          for (std::size_t k = 0; k < num.size(); ++k)
            worst = std::max(worst, std::abs(num[k] - evaluate(lie.comps[k], p)));
        }
        rep.checks.push_back({"oracle-agreement", worst, tol, worst <= tol});
      }
    } else if (app.got_subcommand(lie_spinor)) {
      Scene s = load_scene(scene_path);
      rep.command = "lie-spinor --field " + field + " --lift " + lift;
      rep.scene_hash = s.hash;
      if (!s.spinor) throw SceneError("scene has no spinor field");
      GammaRep gam = build_gamma(s.chart.sig.p, s.chart.sig.q);
      const VectorFieldExpr& xi = s.field(field);
      double tol = opts.tol.value_or(s.tol.mixed);

      SpinorFieldExpr result;
      if (lift == "kosmann") {
        KosmannForms forms =
            lie_spinor_kosmann_forms(xi, *s.spinor, s.metric, s.frame, gam, s.bindings);
        double diff =
            spinor_field_max_difference(forms.frame_form, forms.covariant_form, s.bindings);
        rep.checks.push_back({"kosmann-dual-form-agreement", diff, tol, diff <= tol});
        result = forms.frame_form;
      } else if (lift == "penrose") {
        PenroseResult pen = lie_spinor_penrose(xi, *s.spinor, s.metric, s.frame, gam, s.bindings);
        KosmannForms forms =
            lie_spinor_kosmann_forms(xi, *s.spinor, s.metric, s.frame, gam, s.bindings);
        Connection conn = christoffel(s.metric);
        Expr div = divergence(xi, s.metric, conn);
        double worst = 0.0;
        for (const auto& p : s.bindings) {
          double dv = evaluate(div, p);
          for (int i = 0; i < gam.N; ++i) {
            auto lhs = evaluate_complex(pen.value.comps[i], p) -
                       evaluate_complex(forms.frame_form.comps[i], p);
            auto rhs = -0.25 * dv * evaluate_complex(s.spinor->comps[i], p);
            worst = std::max(worst, std::abs(lhs - rhs));
          }
        }
        rep.checks.push_back({"penrose-trace-reduction", worst, tol, worst <= tol});
        if (pen.experimental)
          rep.extras.emplace_back("warning", "penrose lift outside m=4 is experimental");
        result = pen.value;
      } else if (lift == "general") {
        if (coeffs_path.empty())
          throw SceneError("--lift general requires --coeffs <file> with xi_frame and Xi");
        std::ifstream in(coeffs_path);
        if (!in) throw SceneError("cannot open coefficients file '" + coeffs_path + "'");
        nlohmann::json cj;
        in >> cj;
        LiftCoefficients lc;
        lc.flavor = LiftFlavor::custom;
        const int m = s.chart.dim();
        for (const auto& comp : cj.at("xi_frame"))
          lc.xi_frame.push_back(
              detail::parse_scene_expr(comp.get<std::string>(), s.chart, "coeffs.xi_frame"));
        lc.Xi = ExprMatrix(m, m);
        auto xij = cj.at("Xi");
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            lc.Xi.at(a, b) =
                detail::parse_scene_expr(xij.at(a).at(b).get<std::string>(), s.chart, "coeffs.Xi");
        if (static_cast<int>(lc.xi_frame.size()) != m)
          throw SceneError("coeffs.xi_frame has wrong length");
        double anti = antisymmetry_residual(lc, s.bindings);
        rep.checks.push_back({"coefficients-antisymmetry", anti, s.tol.symbolic,
                              anti <= s.tol.symbolic});
        result = lie_spinor_general(lc, *s.spinor, gam, s.frame, s.bindings);
      } else {
        throw SceneError("unknown --lift '" + lift + "' (expected kosmann, penrose or general)");
      }
      std::string comps = "{\"re\":[";
      for (int i = 0; i < result.dim(); ++i)
        comps += (i ? ",\"" : "\"") + to_string(result.comps[i].re) + "\"";
      comps += "],\"im\":[";
      for (int i = 0; i < result.dim(); ++i)
        comps += (i ? ",\"" : "\"") + to_string(result.comps[i].im) + "\"";
      rep.extras.emplace_back("lie_derivative", comps + "]}");
      rep.extras.emplace_back("value_at_first_point",
                              spinor_values_str(result, s.bindings.front()));
    } else if (app.got_subcommand(decomp)) {
      SignatureMetric sig = parse_signature(signature);
      Eigen::MatrixXd m = load_matrix(matrix_path);
      rep.command = "decompose-matrix --signature " + signature;
      if (m.rows() != sig.dim() || m.cols() != sig.dim())
        throw SceneError("matrix dimension does not match signature");
      ReductiveSplit s = decompose_reductive(m, sig);
      double rec = (s.recompose() - m).cwiseAbs().maxCoeff();
      double tol = opts.tol.value_or(1e-12);
      rep.checks.push_back({"recomposition", rec, tol, rec <= tol});
      nlohmann::json out;
      out["antisym"] = matrix_json(s.antisym);
      out["sym_traceless"] = matrix_json(s.sym_traceless);
      out["trace_scalar"] = s.trace_scalar;
      rep.extras.emplace_back("decomposition", out.dump());
    } else if (app.got_subcommand(clifford)) {
      SignatureMetric sig = parse_signature(signature);
      rep.command = "verify-clifford --signature " + signature;
      double tol = opts.tol.value_or(1e-12);
      double res = clifford_residual(build_gamma(sig.p, sig.q));
      rep.checks.push_back({"clifford-relation", res, tol, res <= tol});
    } else if (app.got_subcommand(projectors)) {
      SignatureMetric sig = parse_signature(signature);
      rep.command = "verify-projectors --signature " + signature;
      double tol = opts.tol.value_or(1e-12);
      ProjectorReport res = verify_projector_family(reductive_projector_family(sig));
      rep.checks.push_back({"projector-idempotence", res.max_idempotence_residual, tol,
                            res.max_idempotence_residual <= tol});
      rep.checks.push_back(
          {"projector-completeness", res.max_sum_residual, tol, res.max_sum_residual <= tol});
    } else {  // selftest
      rep.command = "selftest";
      rep.seed = opts.seed;
      rep.scene_hash = fnv1a_hex("selftest-builtin-battery-v1");
      for (const CriterionResult& c : run_acceptance_battery(opts.seed)) {
        CheckResult cr = c.check();
        if (opts.tol) {
          cr.tolerance = *opts.tol;
          cr.pass = cr.residual <= cr.tolerance;
        }
        rep.checks.push_back(cr);
      }
    }
    rep.seed = opts.seed;
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConventionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  return emit(rep, opts, elapsed());
}
