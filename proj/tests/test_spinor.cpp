#include <catch_amalgamated.hpp>

#include "gnlie/battery.hpp"
#include "gnlie/lie_spinor.hpp"
#include "gnlie/parse.hpp"
#include "gnlie/transport.hpp"

using namespace gnlie;

namespace {

Scene mink() { return builtin_scene("minkowski"); }
Scene sphere() { return builtin_scene("sphere"); }

SpinorFieldExpr constant_spinor(int n) {
  SpinorFieldExpr psi = SpinorFieldExpr::zero(n);
  psi.comps[0].re = Expr::integer(1);
  if (n > 1) psi.comps[1].im = Expr::rational(1, 3);
  return psi;
}

/// S^2 x R^2 product metric: a curved four-dimensional Riemannian chart for
/// exercising the Kosmann identity away from both flat space and m=2.
Scene product_scene() {
  nlohmann::json j;
  j["schema"] = 1;
  j["dimension"] = 4;
  j["signature"] = {4, 0};
  j["coordinates"] = {"x0", "x1", "x2", "x3"};
  j["metric"] = {{"00", "1"}, {"11", "sin(x0)^2"}, {"22", "1"}, {"33", "1"}};
  j["vector_fields"] = {{"mix", {"x2/2", "1", "-x0", "x1*x3"}}};
  j["spinor"] = {{"re", {"1", "x2", "0", "x0"}}, {"im", {"0", "0", "1", "x3/2"}}};
  j["points"] = nlohmann::json::array();
  for (const auto& x :
       halton_points(12, {{0.3, 2.8}, {0.1, 6.1}, {-1.0, 1.0}, {-1.0, 1.0}}))
    j["points"].push_back(x);
  return scene_from_json(j, "product");
}

}  // namespace

TEST_CASE("gamma representations") {
  SECTION("signature rules on the squares") {
    GammaRep r13 = build_gamma(1, 3);
    REQUIRE(r13.N == 4);
    REQUIRE((r13.gamma[0] * r13.gamma[0] - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() ==
            0.0);
    for (int k = 1; k < 4; ++k)
      REQUIRE(
          (r13.gamma[k] * r13.gamma[k] + ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() ==
          0.0);
  }

  SECTION("(2,0): anticommuting Hermitian pair") {
    GammaRep r = build_gamma(2, 0);
    REQUIRE((r.gamma[0] * r.gamma[1] + r.gamma[1] * r.gamma[0]).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(clifford_residual(r) == 0.0);
  }

  SECTION("(1,1): exhaustive anticommutator table") {
    GammaRep r = build_gamma(1, 1);
    REQUIRE(r.N == 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        ComplexMatrix anti = r.gamma[a] * r.gamma[b] + r.gamma[b] * r.gamma[a];
        ComplexMatrix expect =
            (a == b) ? ComplexMatrix(2.0 * r.sig.eta(a) * ComplexMatrix::Identity(2, 2))
                     : ComplexMatrix(ComplexMatrix::Zero(2, 2));
        REQUIRE((anti - expect).cwiseAbs().maxCoeff() <= 1e-12);
      }
  }

  SECTION("full clifford residual across supported signatures") {
    for (auto [p, q] : {std::pair{1, 1}, {2, 0}, {0, 2}, {1, 3}, {2, 2}, {0, 4}, {3, 3}, {0, 6}})
      REQUIRE(clifford_residual(build_gamma(p, q)) <= 1e-12);
  }

  SECTION("chiral basis for (1,3): off-diagonal blocks") {
    GammaRep r = build_gamma(1, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        REQUIRE(std::abs(r.gamma[0](i, j)) == 0.0);          // upper-left block empty
        REQUIRE(std::abs(r.gamma[0](i + 2, j + 2)) == 0.0);  // lower-right block empty
      }
    REQUIRE(r.gamma[0](0, 2) == std::complex<double>(1.0, 0.0));
  }

  SECTION("odd or oversized dimensions are rejected") {
    REQUIRE_THROWS_AS(build_gamma(1, 2), Error);
    REQUIRE_THROWS_AS(build_gamma(4, 4), Error);
  }
}

TEST_CASE("spin connection") {
  SECTION("flat space: identically zero") {
    Scene s = mink();
    Connection conn = christoffel(s.metric);
    SpinConnection w = spin_connection(s.frame, conn);
    for (int mu = 0; mu < 4; ++mu) REQUIRE(w.omega[mu].structurally_zero());
  }

  SECTION("sphere: omega_phi12 = -cos(theta), antisymmetric") {
    Scene s = sphere();
    Connection conn = christoffel(s.metric);
    SpinConnection w = spin_connection(s.frame, conn);
    for (double th : {0.4, 1.0, 2.0}) {
      PointBinding p = s.chart.bind(std::vector<double>{th, 0.8});
      REQUIRE(evaluate(w.at(1, 0, 1), p) == Catch::Approx(-std::cos(th)).margin(1e-13));
      REQUIRE(evaluate(w.at(1, 1, 0), p) == Catch::Approx(std::cos(th)).margin(1e-13));
      REQUIRE(evaluate(w.at(0, 0, 1), p) == Catch::Approx(0.0).margin(1e-13));
    }
    REQUIRE(spin_connection_antisymmetry_residual(w, s.bindings) <= 1e-12);
  }

  SECTION("polar plane: constant coefficient") {
    Scene s = builtin_scene("polar");
    Connection conn = christoffel(s.metric);
    SpinConnection w = spin_connection(s.frame, conn);
    for (const auto& p : s.bindings)
      REQUIRE(evaluate(w.at(1, 0, 1), p) == Catch::Approx(-1.0).margin(1e-13));
    REQUIRE(spin_connection_antisymmetry_residual(w, s.bindings) <= 1e-12);
  }
}

TEST_CASE("spinor covariant derivative") {
  SECTION("constant spinor in flat space") {
    Scene s = mink();
    GammaRep rep = build_gamma(1, 3);
    Connection conn = christoffel(s.metric);
    SpinConnection w = spin_connection(s.frame, conn);
    auto nabla = spinor_cov_derivative(constant_spinor(4), w, rep, s.frame);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i) {
        REQUIRE(is_zero(nabla[a][i].re));
        REQUIRE(is_zero(nabla[a][i].im));
      }
  }

  SECTION("linear components differentiate componentwise in flat space") {
    Scene s = mink();
    GammaRep rep = build_gamma(1, 3);
    SpinConnection w = spin_connection(s.frame, christoffel(s.metric));
    SpinorFieldExpr psi = SpinorFieldExpr::zero(4);
    psi.comps[0].re = Expr::symbol("x0");
    auto nabla = spinor_cov_derivative(psi, w, rep, s.frame);
    REQUIRE(structurally_equal(nabla[0][0].re, Expr::integer(1)));
    REQUIRE(is_zero(nabla[1][0].re));
  }

  SECTION("curved space against the parallel-transport oracle") {
    Scene s = sphere();
    GammaRep rep = build_gamma(2, 0);
    SpinConnection w = spin_connection(s.frame, christoffel(s.metric));
    SpinorFieldExpr psi;
    psi.comps = {ComplexExpr{parse("1 + x0/5"), Expr::integer(0)},
                 ComplexExpr{parse("x1/7"), parse("1/2")}};
    auto nabla = spinor_cov_derivative(psi, w, rep, s.frame);

    // oracle: transport psi(flow_h(x)) back to x along each frame direction
    // with RK4 parallel transport, central difference in h
    const double h = 1e-4;
    for (const auto& x : {std::vector<double>{0.7, 1.2}, std::vector<double>{1.9, 4.0}}) {
      PointBinding p = s.chart.bind(x);
      for (int a = 0; a < 2; ++a) {
        VectorFieldExpr dir;
        dir.comps = {s.frame.frame.at(a, 0), s.frame.frame.at(a, 1)};
        auto sample = [&](double t) {
          std::vector<double> y = flow_map(dir, s.chart, x, t, 16);
          Eigen::VectorXcd v = evaluate_spinor(psi, s.chart.bind(y));
          ComplexMatrix u = parallel_transport_operator(dir, w, rep, x, t, 16);
          return Eigen::VectorXcd(u.inverse() * v);
        };
        Eigen::VectorXcd quotient = (sample(h) - sample(-h)) / (2.0 * h);
        for (int i = 0; i < 2; ++i)
          REQUIRE(std::abs(quotient(i) - evaluate_complex(nabla[a][i], p)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("general gauge-natural spinor Lie derivative") {
  Scene s = mink();
  GammaRep rep = build_gamma(1, 3);

  SECTION("zero coefficients, constant spinor") {
    LiftCoefficients zero;
    zero.flavor = LiftFlavor::custom;
    zero.xi_frame.assign(4, Expr::integer(0));
    zero.Xi = ExprMatrix(4, 4);
    SpinorFieldExpr lie = lie_spinor_general(zero, constant_spinor(4), rep, s.frame, s.bindings);
    for (int i = 0; i < 4; ++i) {
      REQUIRE(is_zero(lie.comps[i].re));
      REQUIRE(is_zero(lie.comps[i].im));
    }
  }

  SECTION("constant algebra part rotates by (s/2) gamma^1 gamma^2") {
    const double sval = 0.75;
    LiftCoefficients lift;
    lift.flavor = LiftFlavor::custom;
    lift.xi_frame.assign(4, Expr::integer(0));
    lift.Xi = ExprMatrix(4, 4);
    lift.Xi.at(1, 2) = Expr::rational(3, 4);
    lift.Xi.at(2, 1) = Expr::rational(-3, 4);
    SpinorFieldExpr psi = constant_spinor(4);
    SpinorFieldExpr lie = lie_spinor_general(lift, psi, rep, s.frame, s.bindings);

    ComplexMatrix expect = 0.5 * sval * rep.gamma[1] * rep.gamma[2];
    Eigen::VectorXcd psi0 = evaluate_spinor(psi, s.bindings[0]);
    Eigen::VectorXcd got = evaluate_spinor(lie, s.bindings[0]);
    REQUIRE((got - expect * psi0).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SECTION("pure translation transports scalar factors") {
    LiftCoefficients lift;
    lift.flavor = LiftFlavor::custom;
    lift.xi_frame = {Expr::integer(1), Expr::integer(0), Expr::integer(0), Expr::integer(0)};
    lift.Xi = ExprMatrix(4, 4);
    SpinorFieldExpr psi = SpinorFieldExpr::zero(4);
    psi.comps[0].re = parse("x0^2");
    SpinorFieldExpr lie = lie_spinor_general(lift, psi, rep, s.frame, s.bindings);
    REQUIRE(structurally_equal(lie.comps[0].re, simplify(parse("2*x0"))));
  }

  SECTION("non-antisymmetric coefficients are rejected") {
    LiftCoefficients bad;
    bad.flavor = LiftFlavor::natural;
    bad.xi_frame.assign(4, Expr::integer(0));
    bad.Xi = ExprMatrix(4, 4);
    bad.Xi.at(0, 0) = Expr::integer(1);
    REQUIRE_THROWS_AS(lie_spinor_general(bad, constant_spinor(4), rep, s.frame, s.bindings),
                      Error);
  }
}

TEST_CASE("kosmann spinor Lie derivative") {
  Scene s = mink();
  GammaRep rep = build_gamma(1, 3);

  SECTION("translation annihilates constant spinors") {
    SpinorFieldExpr lie = lie_spinor_kosmann(s.field("trans0"), constant_spinor(4), s.metric,
                                             s.frame, rep, s.bindings);
    for (int i = 0; i < 4; ++i) {
      REQUIRE(is_zero(lie.comps[i].re));
      REQUIRE(is_zero(lie.comps[i].im));
    }
  }

  SECTION("rotation on a constant spinor gives (1/2) gamma^1 gamma^2 psi") {
    SpinorFieldExpr psi = constant_spinor(4);
    KosmannForms forms =
        lie_spinor_kosmann_forms(s.field("rot12"), psi, s.metric, s.frame, rep, s.bindings);
    REQUIRE(spinor_field_max_difference(forms.frame_form, forms.covariant_form, s.bindings) <=
            1e-12);
    ComplexMatrix expect = 0.5 * rep.gamma[1] * rep.gamma[2];
    Eigen::VectorXcd got = evaluate_spinor(forms.frame_form, s.bindings[0]);
    Eigen::VectorXcd psi0 = evaluate_spinor(psi, s.bindings[0]);
    REQUIRE((got - expect * psi0).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SECTION("the two local forms agree on the sphere") {
    Scene sp = sphere();
    GammaRep rep2 = build_gamma(2, 0);
    KosmannForms forms = lie_spinor_kosmann_forms(sp.field("rot_z"), *sp.spinor, sp.metric,
                                                  sp.frame, rep2, sp.bindings);
    REQUIRE(spinor_field_max_difference(forms.frame_form, forms.covariant_form, sp.bindings) <=
            1e-9);
  }

  SECTION("the two local forms agree on a curved product space, random fields") {
    Scene prod = product_scene();
    GammaRep rep4 = build_gamma(4, 0);
    std::mt19937_64 gen(20);
    for (int k = 0; k < 50; ++k) {
      VectorFieldExpr xi = battery_detail::random_polynomial_field(gen, prod.chart);
      KosmannForms forms =
          lie_spinor_kosmann_forms(xi, *prod.spinor, prod.metric, prod.frame, rep4, prod.bindings);
      REQUIRE(spinor_field_max_difference(forms.frame_form, forms.covariant_form, prod.bindings) <=
              1e-9);
    }
  }

  SECTION("general entry point with kosmann coefficients is the same computation") {
    LiftCoefficients kos = kosmann_coeffs(s.field("boost01"), s.frame);
    SpinorFieldExpr via_general = lie_spinor_general(kos, *s.spinor, rep, s.frame, s.bindings);
    KosmannForms forms =
        lie_spinor_kosmann_forms(s.field("boost01"), *s.spinor, s.metric, s.frame, rep,
                                 s.bindings);
    for (int i = 0; i < 4; ++i) {
      REQUIRE(structurally_equal(via_general.comps[i].re, forms.frame_form.comps[i].re));
      REQUIRE(structurally_equal(via_general.comps[i].im, forms.frame_form.comps[i].im));
    }
  }

  SECTION("inconsistent frame/metric pairs are surfaced loudly") {
    // feeding the sphere metric with a flat identity frame breaks the
    // dual-form agreement, which must raise rather than return quietly
    Scene sp = sphere();
    GammaRep rep2 = build_gamma(2, 0);
    FrameField flat{sp.chart, ExprMatrix::identity(2), ExprMatrix::identity(2)};
    REQUIRE_THROWS_AS(lie_spinor_kosmann(sp.field("rot_x"), *sp.spinor, sp.metric, flat, rep2,
                                         sp.bindings),
                      ConventionError);
  }

  SECTION("Leibniz rule over scalar multiplication") {
    Scene sp = sphere();
    GammaRep rep2 = build_gamma(2, 0);
    Expr f = parse("x0^2/3 + sin(x1)");
    const VectorFieldExpr& xi = sp.field("rot_x");

    SpinorFieldExpr f_psi = *sp.spinor;
    for (auto& comp : f_psi.comps) comp = simplify(scale(f, comp));
    SpinorFieldExpr lie_fpsi =
        lie_spinor_kosmann(xi, f_psi, sp.metric, sp.frame, rep2, sp.bindings);
    SpinorFieldExpr lie_psi =
        lie_spinor_kosmann(xi, *sp.spinor, sp.metric, sp.frame, rep2, sp.bindings);

    Expr lie_f = Expr::integer(0);
    for (int mu = 0; mu < 2; ++mu)
      lie_f = ex_add(lie_f, ex_mul(xi.comps[mu], differentiate(f, sp.chart.ids[mu])));

    for (const auto& p : sp.bindings)
      for (int i = 0; i < 2; ++i) {
        auto lhs = evaluate_complex(lie_fpsi.comps[i], p);
        auto rhs = evaluate(lie_f, p) * evaluate_complex(sp.spinor->comps[i], p) +
                   evaluate(f, p) * evaluate_complex(lie_psi.comps[i], p);
        REQUIRE(std::abs(lhs - rhs) <= 1e-9);
      }
  }
}

TEST_CASE("penrose spinor Lie derivative") {
  Scene s = mink();
  GammaRep rep = build_gamma(1, 3);

  SECTION("dilation on a constant spinor gives -psi") {
    SpinorFieldExpr psi = constant_spinor(4);
    PenroseResult pen =
        lie_spinor_penrose(s.field("dilation"), psi, s.metric, s.frame, rep, s.bindings);
    REQUIRE_FALSE(pen.experimental);
    for (const auto& p : s.bindings)
      for (int i = 0; i < 4; ++i)
        REQUIRE(std::abs(evaluate_complex(pen.value.comps[i], p) +
                         evaluate_complex(psi.comps[i], p)) <= 1e-10);
  }

  SECTION("divergence-free fields reduce to the kosmann derivative") {
    PenroseResult pen =
        lie_spinor_penrose(s.field("boost01"), *s.spinor, s.metric, s.frame, rep, s.bindings);
    SpinorFieldExpr kos = lie_spinor_kosmann(s.field("boost01"), *s.spinor, s.metric, s.frame,
                                             rep, s.bindings);
    REQUIRE(spinor_field_max_difference(pen.value, kos, s.bindings) <= 1e-12);
  }

  SECTION("zero field gives zero") {
    VectorFieldExpr zero;
    zero.comps.assign(4, Expr::integer(0));
    PenroseResult pen = lie_spinor_penrose(zero, *s.spinor, s.metric, s.frame, rep, s.bindings);
    for (const auto& p : s.bindings)
      for (int i = 0; i < 4; ++i)
        REQUIRE(std::abs(evaluate_complex(pen.value.comps[i], p)) == 0.0);
  }

  SECTION("the difference from kosmann is exactly the trace term") {
    Connection conn = christoffel(s.metric);
    std::mt19937_64 gen(21);
    for (int k = 0; k < 10; ++k) {
      VectorFieldExpr xi = battery_detail::random_polynomial_field(gen, s.chart);
      PenroseResult pen = lie_spinor_penrose(xi, *s.spinor, s.metric, s.frame, rep, s.bindings);
      KosmannForms forms =
          lie_spinor_kosmann_forms(xi, *s.spinor, s.metric, s.frame, rep, s.bindings);
      Expr div = divergence(xi, s.metric, conn);
      for (const auto& p : s.bindings) {
        double dv = evaluate(div, p);
        for (int i = 0; i < 4; ++i) {
          auto lhs = evaluate_complex(pen.value.comps[i], p) -
                     evaluate_complex(forms.frame_form.comps[i], p);
          auto rhs = -0.25 * dv * evaluate_complex(s.spinor->comps[i], p);
          REQUIRE(std::abs(lhs - rhs) <= 1e-10);
        }
      }
    }
  }

  SECTION("outside m=4 the result is flagged experimental") {
    Scene sp = sphere();
    GammaRep rep2 = build_gamma(2, 0);
    PenroseResult pen = lie_spinor_penrose(sp.field("rot_z"), *sp.spinor, sp.metric, sp.frame,
                                           rep2, sp.bindings);
    REQUIRE(pen.experimental);
  }
}
