#ifndef GNLIE_BATTERY_HPP
#define GNLIE_BATTERY_HPP

#include <chrono>

#include "gnlie/builtin_scenes.hpp"
#include "gnlie/numeric_lie.hpp"
#include "gnlie/report.hpp"
#include "gnlie/transport.hpp"

namespace gnlie {

/// One acceptance criterion: the worst residual it saw, the tolerance it is
/// gated on, and the measured runtime against its budget.
struct CriterionResult {
  int id = 0;
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool conditions_ok = true;  // side conditions beyond residual <= tolerance
  double ms = 0.0;
  double budget_ms = 0.0;
  std::string detail;

  bool pass() const {
    bool p = residual <= tolerance && conditions_ok;
    if (budget_ms > 0.0) p = p && ms <= budget_ms;
    return p;
  }

  CheckResult check() const {
    return CheckResult{std::to_string(id) + "-" + name, residual, tolerance, pass()};
  }
};

namespace battery_detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline double rng_uniform(std::mt19937_64& gen, double lo, double hi) {
  double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline long long rng_int(std::mt19937_64& gen, long long lo, long long hi) {
  return lo + static_cast<long long>(gen() % static_cast<unsigned long long>(hi - lo + 1));
}

/// Random polynomial vector field of degree <= 2 with small rational
/// coefficients; components are sums of three monomials.
inline VectorFieldExpr random_polynomial_field(std::mt19937_64& gen, const Chart& chart) {
  VectorFieldExpr out;
  const int m = chart.dim();
  for (int mu = 0; mu < m; ++mu) {
    Expr comp = Expr::integer(0);
    for (int term = 0; term < 3; ++term) {
      long long num = rng_int(gen, -4, 4);
      if (num == 0) num = 1;
      Expr mono = Expr::rational(num, 2);
      int degree = term;  // one constant, one linear, one quadratic term
      for (int d = 0; d < degree; ++d)
        mono = ex_mul(mono, chart.coordinate(static_cast<int>(rng_int(gen, 0, m - 1))));
      comp = ex_add(comp, mono);
    }
    out.comps.push_back(simplify(comp));
  }
  return out;
}

// ---- random expression trees for the parser suite ----

inline Expr random_ast(std::mt19937_64& gen, int depth) {
  int pick = static_cast<int>(rng_int(gen, 0, depth <= 0 ? 2 : 9));
  switch (pick) {
    case 0: return Expr::symbol("x" + std::to_string(rng_int(gen, 0, 2)));
    case 1: {
      long long num = rng_int(gen, -9, 9);
      long long den = rng_int(gen, 1, 4);
      return Expr::rational(num, den);
    }
    case 2: return Expr::real(rng_uniform(gen, -2.0, 2.0));
    case 3: return Expr::unary(UnaryOp::neg, random_ast(gen, depth - 1));
    case 4: {
      static const UnaryOp fns[] = {UnaryOp::sin, UnaryOp::cos,  UnaryOp::tan, UnaryOp::sinh,
                                    UnaryOp::cosh, UnaryOp::exp, UnaryOp::ln,  UnaryOp::sqrt};
      return Expr::unary(fns[rng_int(gen, 0, 7)], random_ast(gen, depth - 1));
    }
    case 5: {
      // constant integer or half-integer exponent
      static const std::pair<long long, long long> exps[] = {{2, 1}, {3, 1}, {-1, 1}, {1, 2}};
      auto [n, d] = exps[rng_int(gen, 0, 3)];
      return Expr::binary(BinaryOp::pow, random_ast(gen, depth - 1), Expr::rational(n, d));
    }
    default: {
      static const BinaryOp ops[] = {BinaryOp::add, BinaryOp::sub, BinaryOp::mul, BinaryOp::div};
      return Expr::binary(ops[rng_int(gen, 0, 3)], random_ast(gen, depth - 1),
                          random_ast(gen, depth - 1));
    }
  }
}

/// Central finite difference with one Richardson level, h in {1e-3, 1e-4}.
template <class F>
double fd_derivative(F&& f, double x) {
  auto quot = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  double d1 = quot(1e-3);
  double d2 = quot(1e-4);
  // step ratio 10: eliminate the h^2 term
  return (100.0 * d2 - d1) / 99.0;
}

inline TensorFieldExpr scene_scalar(const Scene& s, const std::string& scene_name,
                                    double weight) {
  // a fixed smooth scalar per scene, used by the oracle battery
  const char* f = scene_name == "minkowski" ? "x0^2 + 2*x1 - x2*x3 + 1"
                  : scene_name == "sphere"  ? "sin(x0)*cos(x1) + 2"
                                            : "x0^2*cos(x1) + x0";
  return TensorFieldExpr::scalar(s.chart, simplify(parse(f)), weight);
}

}  // namespace battery_detail

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

inline CriterionResult criterion_clifford() {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{1, "clifford-suite", 0.0, 1e-12, true, 0.0, 1000.0, ""};
  const std::pair<int, int> sigs[] = {{1, 1}, {2, 0}, {0, 2}, {1, 3}, {2, 2}, {0, 4}};
  for (auto [p, q] : sigs)
    r.residual = std::max(r.residual, clifford_residual(build_gamma(p, q)));
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_reductive(std::uint64_t seed) {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{2, "reductive-decomposition", 0.0, 1e-12, true, 0.0, 5000.0, ""};
  double ad_worst = 0.0;
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int m = 1; m <= 6; ++m)
    for (int p = 0; p <= m; ++p) {
      SignatureMetric sig{p, m - p};
      for (int k = 0; k < 500; ++k) {
        LieMatrix mat = detail::random_matrix(gen, m, 2.0);
        ReductiveSplit s = decompose_reductive(mat, sig);
        r.residual = std::max(r.residual, (s.recompose() - mat).cwiseAbs().maxCoeff());
      }
      ProjectorReport proj = verify_projector_family(reductive_projector_family(sig));
      r.residual = std::max({r.residual, proj.max_idempotence_residual, proj.max_sum_residual});
      AdInvarianceReport ad = check_ad_invariance(sig, 100, seed ^ (m * 131 + p));
      ad_worst = std::max({ad_worst, ad.max_so_component, ad.max_trace_component,
                           ad.max_v_component, ad.max_commutation});
    }
  r.conditions_ok = ad_worst <= 1e-9;
  r.detail = "ad-invariance residual " + Report::num(ad_worst) + " (tolerance 1e-09)";
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_kosmann_identity(std::uint64_t seed) {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{3, "kosmann-identity", 0.0, 1e-9, true, 0.0, 30000.0, ""};
  std::mt19937_64 gen(seed ^ 0x1234567fULL);
  for (const char* name : {"minkowski", "sphere"}) {
    Scene s = builtin_scene(name);
    GammaRep rep = build_gamma(s.chart.sig.p, s.chart.sig.q);
    for (int k = 0; k < 50; ++k) {
      VectorFieldExpr xi = battery_detail::random_polynomial_field(gen, s.chart);
      KosmannForms forms =
          lie_spinor_kosmann_forms(xi, *s.spinor, s.metric, s.frame, rep, s.bindings);
      r.residual = std::max(
          r.residual, spinor_field_max_difference(forms.frame_form, forms.covariant_form,
                                                  s.bindings));
    }
  }
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_killing_battery() {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{4, "killing-battery", 0.0, 1e-12, true, 0.0, 0.0, ""};
  Scene mink = builtin_scene("minkowski");
  Scene sphere = builtin_scene("sphere");
  const char* killing_mink[] = {"trans0", "trans1", "trans2", "trans3", "rot12",
                                "rot13",  "rot23",  "boost01", "boost02", "boost03"};
  for (const char* f : killing_mink)
    r.residual = std::max(r.residual,
                          killing_residual(mink.field(f), mink.metric, mink.bindings).max_norm);
  for (const char* f : {"rot_z", "rot_x", "rot_y"})
    r.residual = std::max(
        r.residual, killing_residual(sphere.field(f), sphere.metric, sphere.bindings).max_norm);

  Connection conn = christoffel(mink.metric);
  double conformal_worst = 0.0;
  for (const char* f : {"dilation", "conformal0"}) {
    conformal_worst = std::max(
        conformal_worst,
        conformal_killing_residual(mink.field(f), mink.metric, conn, mink.bindings).max_norm);
    double killing = killing_residual(mink.field(f), mink.metric, mink.bindings).max_norm;
    if (killing <= 1e-6) r.conditions_ok = false;  // must be visibly non-Killing
  }
  if (conformal_worst > 1e-9) r.conditions_ok = false;
  r.detail = "conformal residual " + Report::num(conformal_worst) + " (tolerance 1e-09)";
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_gkilling_equivalences(std::uint64_t seed) {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{5, "gkilling-equivalences", 0.0, 1e-12, true, 0.0, 0.0, ""};
  std::mt19937_64 gen(seed ^ 0xabcdefULL);
  for (const char* name : {"minkowski", "sphere"}) {
    Scene s = builtin_scene(name);
    Connection conn = christoffel(s.metric);
    for (const auto& [fname, xi] : s.vector_fields) {
      double killing = killing_residual(xi, s.metric, s.bindings).max_norm;
      double so = g_killing_residual(xi, s.frame, StructureGroup::SO, s.bindings).max_norm;
      double conf = conformal_killing_residual(xi, s.metric, conn, s.bindings).max_norm;
      double cso = g_killing_residual(xi, s.frame, StructureGroup::CSO, s.bindings).max_norm;
      if ((killing <= 1e-9) != (so <= 1e-9)) r.conditions_ok = false;
      if ((conf <= 1e-9) != (cso <= 1e-9)) r.conditions_ok = false;
    }
    for (int k = 0; k < 25; ++k) {
      VectorFieldExpr xi = battery_detail::random_polynomial_field(gen, s.chart);
      r.residual = std::max(
          r.residual, g_killing_residual(xi, s.frame, StructureGroup::GL, s.bindings).max_norm);
    }
  }
  r.detail = "GL residual is the reported residual; equivalences checked on both scenes";
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_reductive_metric_lie(std::uint64_t seed) {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{6, "reductive-metric-lie", 0.0, 1e-9, true, 0.0, 0.0, ""};
  std::mt19937_64 gen(seed ^ 0x777ULL);
  struct Box {
    const char* scene;
    std::vector<std::pair<double, double>> box;
  };
  const Box boxes[] = {{"minkowski", {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}}},
                       {"sphere", {{0.2, 2.9415926535897932}, {0.1, 6.1}}}};
  for (const auto& b : boxes) {
    Scene s = builtin_scene(b.scene);
    auto pts = s.chart.bind_all(halton_points(50, b.box, 3));
    for (int k = 0; k < 50; ++k) {
      VectorFieldExpr xi = battery_detail::random_polynomial_field(gen, s.chart);
      LiftCoefficients lift = kosmann_coeffs(xi, s.frame);
      r.residual = std::max(r.residual,
                            reductive_metric_lie(lift, s.metric, s.frame, pts).max_norm);
    }
  }
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_oracle_concordance() {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{7, "oracle-concordance", 0.0, 1e-6, true, 0.0, 60000.0, ""};
  // t small enough that the t^4 Richardson remainder of the quadratic
  // conformal field sits well under the 1e-6 gate, large enough that the
  // finite-difference Jacobian noise (which grows like 1/t) stays below it
  FlowConfig cfg = FlowConfig::make(0.0025, 32);
  for (const char* name : {"minkowski", "sphere", "polar"}) {
    Scene s = builtin_scene(name);
    const int m = s.chart.dim();
    TensorFieldExpr metric_tensor = TensorFieldExpr::covariant2(s.chart, s.metric.g);
    TensorFieldExpr f0 = battery_detail::scene_scalar(s, name, 0.0);
    TensorFieldExpr f1 = battery_detail::scene_scalar(s, name, 1.0);
    for (const auto& [fname, xi] : s.vector_fields) {
      ExprMatrix sym_lie_g = lie_derivative_metric(xi, s.metric);
      TensorFieldExpr sym_f0 = lie_derivative_tensor_density(xi, f0);
      TensorFieldExpr sym_f1 = lie_derivative_tensor_density(xi, f1);
      LiftCoefficients nat = natural_lift_coeffs(xi, s.frame);
      for (const auto& x : s.points) {
        PointBinding p = s.chart.bind(x);
        std::vector<double> num_g = numeric_lie_tensor(xi, metric_tensor, x, cfg);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            r.residual =
                std::max(r.residual, std::abs(num_g[static_cast<std::size_t>(i) * m + j] -
                                              evaluate(sym_lie_g.at(i, j), p)));
        r.residual = std::max(
            r.residual, std::abs(numeric_lie_tensor(xi, f0, x, cfg)[0] - evaluate(sym_f0.at(), p)));
        r.residual = std::max(
            r.residual, std::abs(numeric_lie_tensor(xi, f1, x, cfg)[0] - evaluate(sym_f1.at(), p)));
        Eigen::MatrixXd num_lift = numeric_natural_lift(xi, s.frame, x, cfg);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            r.residual = std::max(r.residual,
                                  std::abs(num_lift(a, b) - evaluate(nat.L_upper.at(a, b), p)));
      }
    }
  }
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_penrose_reduction(std::uint64_t seed) {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{8, "penrose-reduction", 0.0, 1e-10, true, 0.0, 0.0, ""};
  Scene s = builtin_scene("minkowski");
  GammaRep rep = build_gamma(1, 3);
  Connection conn = christoffel(s.metric);
  std::mt19937_64 gen(seed ^ 0x42ULL);

  std::vector<VectorFieldExpr> fields = {s.field("dilation"), s.field("boost01"),
                                         s.field("rot12"), s.field("conformal0")};
  for (int k = 0; k < 10; ++k)
    fields.push_back(battery_detail::random_polynomial_field(gen, s.chart));

  for (const auto& xi : fields) {
    KosmannForms forms =
        lie_spinor_kosmann_forms(xi, *s.spinor, s.metric, s.frame, rep, s.bindings);
    PenroseResult pen = lie_spinor_penrose(xi, *s.spinor, s.metric, s.frame, rep, s.bindings);
    Expr div = divergence(xi, s.metric, conn);
    for (const auto& p : s.bindings) {
      double dv = evaluate(div, p);
      for (int i = 0; i < rep.N; ++i) {
        std::complex<double> lhs = evaluate_complex(pen.value.comps[i], p) -
                                   evaluate_complex(forms.frame_form.comps[i], p);
        std::complex<double> rhs =
            -0.25 * dv * evaluate_complex(s.spinor->comps[i], p);
        r.residual = std::max(r.residual, std::abs(lhs - rhs));
      }
    }
  }

  // dilation acting on a constant spinor must give exactly -psi
  SpinorFieldExpr constant = SpinorFieldExpr::zero(rep.N);
  constant.comps[0].re = Expr::integer(1);
  constant.comps[2].im = Expr::rational(1, 2);
  PenroseResult pen =
      lie_spinor_penrose(s.field("dilation"), constant, s.metric, s.frame, rep, s.bindings);
  for (const auto& p : s.bindings)
    for (int i = 0; i < rep.N; ++i)
      r.residual = std::max(r.residual,
                            std::abs(evaluate_complex(pen.value.comps[i], p) +
                                     evaluate_complex(constant.comps[i], p)));
  r.ms = battery_detail::ms_since(t0);
  return r;
}

inline CriterionResult criterion_parser_suite(std::uint64_t seed) {
  auto t0 = battery_detail::Clock::now();
  CriterionResult r{9, "parser-suite", 0.0, 1e-6, true, 0.0, 10000.0, ""};
  std::mt19937_64 gen(seed ^ 0xceceULL);
  int checked_derivatives = 0;
  for (int k = 0; k < 1000; ++k) {
    Expr ast = battery_detail::random_ast(gen, 8);
    Expr norm = simplify(ast);
    Expr back = simplify(parse(to_string(norm)));
    if (!structurally_equal(norm, back)) {
      r.conditions_ok = false;
      r.detail = "round-trip failed for: " + to_string(norm);
      break;
    }
    // symbolic vs finite-difference derivative at safe points
    Expr d = differentiate(norm, "x0");
    int good_points = 0;
    for (int attempt = 0; attempt < 40 && good_points < 5; ++attempt) {
      PointBinding p;
      double x0 = battery_detail::rng_uniform(gen, 0.3, 1.7);
      p.set("x0", x0);
      p.set("x1", battery_detail::rng_uniform(gen, 0.3, 1.7));
      p.set("x2", battery_detail::rng_uniform(gen, 0.3, 1.7));
      try {
        double sym = evaluate(d, p);
        auto f = [&](double v) {
          PointBinding q = p;
          q.set("x0", v);
          return evaluate(norm, q);
        };
        if (!std::isfinite(sym) || std::abs(sym) > 1e5 || std::abs(f(x0)) > 1e5) continue;
        // two independent difference estimates; the point only counts as an
        // oracle when they agree, which screens out poles (tan) and domain
        // edges sitting inside the stencil
        double fd = battery_detail::fd_derivative(f, x0);
        double fd_check = (f(x0 + 3e-4) - f(x0 - 3e-4)) / 6e-4;
        double scale = std::max({1.0, std::abs(fd), std::abs(fd_check)});
        if (!std::isfinite(fd) || !std::isfinite(fd_check) ||
            std::abs(fd - fd_check) / scale > 1e-7)
          continue;
        double rel = std::abs(sym - fd) / std::max({1.0, std::abs(sym), std::abs(fd)});
        r.residual = std::max(r.residual, rel);
        ++good_points;
        ++checked_derivatives;
      } catch (const EvalError&) {
        continue;  // domain edge; resample
      }
    }
  }
  r.detail += (r.detail.empty() ? "" : "; ") + std::to_string(checked_derivatives) +
              " derivative points checked";
  r.ms = battery_detail::ms_since(t0);
  return r;
}

/// Criteria 1-9; criterion 10 (byte-identical selftest reports) is exercised
/// from outside by running the CLI twice.
inline std::vector<CriterionResult> run_acceptance_battery(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_clifford());
  out.push_back(criterion_reductive(seed));
  out.push_back(criterion_kosmann_identity(seed));
  out.push_back(criterion_killing_battery());
  out.push_back(criterion_gkilling_equivalences(seed));
  out.push_back(criterion_reductive_metric_lie(seed));
  out.push_back(criterion_oracle_concordance());
  out.push_back(criterion_penrose_reduction(seed));
  out.push_back(criterion_parser_suite(seed));
  return out;
}

}  // namespace gnlie

#endif
