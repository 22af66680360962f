#include <catch_amalgamated.hpp>

#include "gnlie/battery.hpp"
#include "gnlie/numeric_lie.hpp"
#include "gnlie/parse.hpp"
#include "gnlie/transport.hpp"

using namespace gnlie;

namespace {

Scene mink() { return builtin_scene("minkowski"); }

VectorFieldExpr plane_rotation() {
  // (x, y) -> (-y, x)
  VectorFieldExpr xi;
  xi.comps = {ex_neg(Expr::symbol("x1")), Expr::symbol("x0")};
  return xi;
}

Chart plane() { return Chart::make({"x0", "x1"}, {2, 0}); }

}  // namespace

TEST_CASE("flow map") {
  SECTION("straight flow of a coordinate field") {
    Scene s = mink();
    std::vector<double> x = {0, 0.2, -0.3, 0.5};
    std::vector<double> y = flow_map(s.field("trans0"), s.chart, x, 1.0, 8);
    REQUIRE(y[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(y[1] == Catch::Approx(0.2).margin(1e-14));
  }

  SECTION("closed rotation orbit returns to the start") {
    Chart c = plane();
    std::vector<double> x = {0.8, 0.1};
    std::vector<double> y = flow_map(plane_rotation(), c, x, 2.0 * M_PI, 1024);
    REQUIRE(std::abs(y[0] - x[0]) <= 1e-8);
    REQUIRE(std::abs(y[1] - x[1]) <= 1e-8);
  }

  SECTION("dilation flow is an exact exponential") {
    Chart c = plane();
    VectorFieldExpr dil;
    dil.comps = {Expr::symbol("x0"), Expr::symbol("x1")};
    std::vector<double> y = flow_map(dil, c, {0.4, -0.7}, 0.1, 64);
    REQUIRE(y[0] == Catch::Approx(0.4 * std::exp(0.1)).epsilon(1e-12));
    REQUIRE(y[1] == Catch::Approx(-0.7 * std::exp(0.1)).epsilon(1e-12));
  }

  SECTION("configuration validation") {
    REQUIRE_THROWS_AS(FlowConfig::make(0.0, 32), Error);
    REQUIRE_THROWS_AS(FlowConfig::make(0.1, 7), Error);
  }
}

TEST_CASE("RK4 converges at fourth order") {
  Chart c = plane();
  VectorFieldExpr rot = plane_rotation();
  std::vector<double> x = {1.0, 0.0};
  auto error_with = [&](int steps) {
    std::vector<double> y = flow_map(rot, c, x, 1.0, steps);
    return std::hypot(y[0] - std::cos(1.0), y[1] - std::sin(1.0));
  };
  double e16 = error_with(16);
  double e32 = error_with(32);
  double order = std::log2(e16 / e32);
  REQUIRE(order >= 3.8);
}

TEST_CASE("flow jacobian of a rotation is the rotation matrix") {
  Chart c = plane();
  Eigen::MatrixXd j = flow_jacobian(plane_rotation(), c, {0.3, 0.4}, 0.5, 64);
  Eigen::MatrixXd expect(2, 2);
  expect << std::cos(0.5), -std::sin(0.5), std::sin(0.5), std::cos(0.5);
  REQUIRE((j - expect).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("numeric Lie derivative of tensors") {
  Scene s = mink();
  FlowConfig cfg = FlowConfig::make(0.0025, 32);
  TensorFieldExpr g2 = TensorFieldExpr::covariant2(s.chart, s.metric.g);

  SECTION("boost is an isometry") {
    for (const auto& x : {std::vector<double>{0.1, 0.2, -0.4, 0.9}}) {
      std::vector<double> lie = numeric_lie_tensor(s.field("boost01"), g2, x, cfg);
      for (double v : lie) REQUIRE(std::abs(v) <= 1e-6);
    }
  }

  SECTION("dilation is a homothety: 2g") {
    std::vector<double> x = {0.3, -0.2, 0.5, 0.1};
    std::vector<double> lie = numeric_lie_tensor(s.field("dilation"), g2, x, cfg);
    PointBinding p = s.chart.bind(x);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        REQUIRE(std::abs(lie[4 * mu + nu] - 2.0 * evaluate(s.metric.g.at(mu, nu), p)) <= 1e-6);
  }

  SECTION("weight-1 scalar density under dilation: jacobian determinant term") {
    TensorFieldExpr f = TensorFieldExpr::scalar(s.chart, parse("x0 + 2"), 1.0);
    std::vector<double> x = {0.3, -0.2, 0.5, 0.1};
    double lie = numeric_lie_tensor(s.field("dilation"), f, x, cfg)[0];
    // xi^rho d_rho f + 4 f = x0 + 4 (x0 + 2)
    REQUIRE(lie == Catch::Approx(x[0] + 4.0 * (x[0] + 2.0)).margin(1e-6));
  }

  SECTION("mixed and contravariant valences match the symbolic formula") {
    Scene polar = builtin_scene("polar");
    const auto& xi = polar.field("trans_x");
    std::vector<double> x = {1.2, 0.9};
    PointBinding p = polar.chart.bind(x);

    TensorFieldExpr mixed{polar.chart, 1, 1, 0.0,
                          {parse("x0"), parse("sin(x1)"), parse("x1/2"), parse("2")}};
    TensorFieldExpr up2{polar.chart, 2, 0, 0.0,
                        {parse("1"), parse("x0*x1"), parse("cos(x1)"), parse("x0^2")}};
    TensorFieldExpr low2_weighted{polar.chart, 0, 2, 1.0,
                                  {parse("x0"), parse("0"), parse("0"), parse("x1+2")}};
    for (const TensorFieldExpr* t : {&mixed, &up2, &low2_weighted}) {
      TensorFieldExpr sym = lie_derivative_tensor_density(xi, *t);
      std::vector<double> num = numeric_lie_tensor(xi, *t, x, cfg);
      for (std::size_t k = 0; k < num.size(); ++k)
        REQUIRE(std::abs(num[k] - evaluate(sym.comps[k], p)) <= 1e-6);
    }
  }

  SECTION("covariant divergence through the flow-volume oracle") {
    Scene polar = builtin_scene("polar");
    // sqrt(det g) = x0 is a weight-1 scalar density; lie of it over sqrt(det g)
    // is the covariant divergence, which is 2 for the radial field
    TensorFieldExpr vol = TensorFieldExpr::scalar(polar.chart, Expr::symbol("x0"), 1.0);
    std::vector<double> x = {1.3, 0.7};
    double lie = numeric_lie_tensor(polar.field("radial"), vol, x, cfg)[0];
    REQUIRE(lie / x[0] == Catch::Approx(2.0).margin(1e-6));
  }
}

TEST_CASE("numeric natural lift matches the symbolic coefficients") {
  Scene s = mink();
  FlowConfig cfg = FlowConfig::make(0.0025, 32);
  std::vector<double> x = {0.2, -0.5, 0.3, 0.8};

  SECTION("translation") {
    Eigen::MatrixXd lift = numeric_natural_lift(s.field("trans1"), s.frame, x, cfg);
    REQUIRE(lift.cwiseAbs().maxCoeff() <= 1e-6);
  }

  SECTION("rotation") {
    Eigen::MatrixXd lift = numeric_natural_lift(s.field("rot12"), s.frame, x, cfg);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
    expect(2, 1) = 1.0;
    expect(1, 2) = -1.0;
    REQUIRE((lift - expect).cwiseAbs().maxCoeff() <= 1e-6);
  }

  SECTION("dilation") {
    Eigen::MatrixXd lift = numeric_natural_lift(s.field("dilation"), s.frame, x, cfg);
    REQUIRE((lift - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-6);
  }

  SECTION("curved chart: sphere rotation against the symbolic route") {
    Scene sp = builtin_scene("sphere");
    LiftCoefficients nat = natural_lift_coeffs(sp.field("rot_x"), sp.frame);
    std::vector<double> y = {0.9, 2.2};
    Eigen::MatrixXd numeric = numeric_natural_lift(sp.field("rot_x"), sp.frame, y, cfg);
    Eigen::MatrixXd symbolic = eval_matrix(nat.L_upper, sp.chart.bind(y));
    REQUIRE((numeric - symbolic).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("Richardson extrapolation earns its keep") {
  // dilation on the flat metric: the raw quotient at t carries a sinh(2t)/t
  // truncation, the extrapolated value kills the t^2 term
  Scene s = mink();
  TensorFieldExpr g2 = TensorFieldExpr::covariant2(s.chart, s.metric.g);
  std::vector<double> x = {0.3, -0.2, 0.5, 0.1};
  const double t = 0.1;

  std::vector<double> raw = detail::central_quotient(s.field("dilation"), g2, x, t, 64);
  std::vector<double> rich = numeric_lie_tensor(s.field("dilation"), g2, x, FlowConfig::make(t, 64));

  PointBinding p = s.chart.bind(x);
  double raw_err = 0, rich_err = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double exact = 2.0 * evaluate(s.metric.g.at(mu, nu), p);
      raw_err = std::max(raw_err, std::abs(raw[4 * mu + nu] - exact));
      rich_err = std::max(rich_err, std::abs(rich[4 * mu + nu] - exact));
    }
  REQUIRE(raw_err / rich_err >= 4.0);
}

TEST_CASE("parallel transport of spinors") {
  SECTION("flat space leaves the spinor alone") {
    Scene s = mink();
    GammaRep rep = build_gamma(1, 3);
    SpinConnection w = spin_connection(s.frame, christoffel(s.metric));
    Eigen::VectorXcd psi0(4);
    psi0 << 1.0, std::complex<double>(0, 0.5), 0.3, 0.0;
    Eigen::VectorXcd out =
        parallel_transport_spinor(psi0, s.field("boost01"), w, rep, {0.1, 0.2, 0.3, 0.4}, 1.0, 64);
    REQUIRE((out - psi0).cwiseAbs().maxCoeff() <= 1e-12);
    // Dirac norm psi^dagger gamma^0 psi is preserved trivially here
    std::complex<double> before = (psi0.adjoint() * rep.gamma[0] * psi0)(0);
    std::complex<double> after = (out.adjoint() * rep.gamma[0] * out)(0);
    REQUIRE(std::abs(before - after) <= 1e-8);
  }

  SECTION("sphere holonomy around latitude loops") {
    Scene sp = builtin_scene("sphere");
    GammaRep rep = build_gamma(2, 0);
    SpinConnection w = spin_connection(sp.frame, christoffel(sp.metric));
    Eigen::VectorXcd psi0(2);
    psi0 << 1.0, std::complex<double>(0.2, -0.4);

    // equator: geodesic, trivial holonomy
    Eigen::VectorXcd eq = parallel_transport_spinor(psi0, sp.field("rot_z"), w, rep,
                                                    {M_PI / 2.0, 0.0}, 2.0 * M_PI, 256);
    REQUIRE((eq - psi0).cwiseAbs().maxCoeff() <= 1e-6);

    // theta = pi/4: holonomy is the closed-form exponential of the constant
    // connection term along the loop. The transport generator per unit phi is
    // -cos(theta)/2 * gamma^0 gamma^1, and (gamma^0 gamma^1)^2 = -1, so the
    // loop holonomy is a rotation by pi*cos(theta) in the spinor plane.
    double theta = M_PI / 4.0;
    Eigen::VectorXcd loop = parallel_transport_spinor(psi0, sp.field("rot_z"), w, rep,
                                                      {theta, 0.0}, 2.0 * M_PI, 512);
    double alpha = M_PI * std::cos(theta);
    ComplexMatrix g01 = rep.gamma[0] * rep.gamma[1];
    ComplexMatrix hol =
        std::cos(alpha) * ComplexMatrix::Identity(2, 2) - std::sin(alpha) * g01;
    REQUIRE((loop - hol * psi0).cwiseAbs().maxCoeff() <= 1e-6);

    // norm preservation over the loop (Euclidean signature)
    REQUIRE(std::abs(loop.norm() - psi0.norm()) <= 1e-8);
  }
}
