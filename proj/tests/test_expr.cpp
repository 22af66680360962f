#include <catch_amalgamated.hpp>

#include "gnlie/battery.hpp"  // random_ast, fd_derivative
#include "gnlie/diff.hpp"
#include "gnlie/eval.hpp"
#include "gnlie/parse.hpp"
#include "gnlie/simplify.hpp"

using namespace gnlie;

namespace {

double eval_at(const Expr& e, std::initializer_list<std::pair<const char*, double>> binds) {
  PointBinding p;
  for (const auto& [name, v] : binds) p.set(name, v);
  return evaluate(e, p);
}

}  // namespace

TEST_CASE("parse and evaluate basics") {
  REQUIRE(eval_at(parse("x0^2 + 3*x1"), {{"x0", 2}, {"x1", 1}}) == Catch::Approx(7.0));
  REQUIRE(eval_at(parse("sqrt(x0)"), {{"x0", 4}}) == Catch::Approx(2.0));
  REQUIRE(eval_at(parse("x0^2+x1^2"), {{"x0", 3}, {"x1", 4}}) == Catch::Approx(25.0));
  REQUIRE(eval_at(parse("sin(x0)"), {{"x0", 0.5}}) == Catch::Approx(std::sin(0.5)));
}

TEST_CASE("parse errors carry byte offsets and expectations") {
  try {
    parse("x0 + ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(e.offset == 5);
    REQUIRE_THAT(e.expected, Catch::Matchers::ContainsSubstring("number"));
  }

  try {
    parse("foo(x0)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("unknown function"));
    REQUIRE(e.offset == 0);
  }

  REQUIRE_THROWS_AS(parse("x0 x1"), ParseError);
  REQUIRE_THROWS_AS(parse("(x0"), ParseError);
  REQUIRE_THROWS_AS(parse(""), ParseError);
  REQUIRE_THROWS_AS(parse("sin x0"), ParseError);  // function needs parentheses
}

TEST_CASE("grammar shape") {
  // '^' is right-associative: x0^2^3 = x0^(2^3)
  Expr e = parse("x0^2^3");
  REQUIRE(is_binary(e, BinaryOp::pow));
  REQUIRE(is_symbol(e.node().a));
  REQUIRE(is_binary(e.node().b, BinaryOp::pow));

  // '-' binds at base level: -x0^2 = (-x0)^2
  Expr n = parse("-x0^2");
  REQUIRE(is_binary(n, BinaryOp::pow));
  REQUIRE(is_unary(n.node().a, UnaryOp::neg));

  // digit-only literals are exact, '.'/exponent forms are doubles
  REQUIRE(parse("7").node().num.exact());
  REQUIRE(parse("1/2").node().a.node().num.exact());
  REQUIRE_FALSE(parse("0.5").node().num.exact());
  REQUIRE_FALSE(parse("1e3").node().num.exact());
}

TEST_CASE("evaluate reports unbound symbols and domain violations") {
  PointBinding p;
  p.set("x0", -1.0);
  REQUIRE_THROWS_AS(evaluate(parse("ln(x0)"), p), EvalError);
  REQUIRE_THROWS_AS(evaluate(parse("sqrt(x0)"), p), EvalError);
  REQUIRE_THROWS_AS(evaluate(parse("x1"), p), EvalError);
  try {
    evaluate(parse("1 + ln(x0)"), p);
    FAIL("expected domain error");
  } catch (const EvalError& e) {
    REQUIRE_THAT(e.offending, Catch::Matchers::ContainsSubstring("ln"));
  }
  p.set("x1", 0.0);
  REQUIRE_THROWS_AS(evaluate(parse("x0/x1"), p), EvalError);
}

TEST_CASE("differentiate table rules") {
  Expr d = differentiate(parse("sin(x0)"), "x0");
  REQUIRE(structurally_equal(d, parse("cos(x0)")));

  REQUIRE(structurally_equal(differentiate(parse("x0*x1"), "x0"), Expr::symbol("x1")));
  REQUIRE(is_zero(differentiate(parse("sin(x0)"), "x1")));

  // d/dx0 exp(x0^2) at x0=1 is 2e; oracle: central finite difference with
  // Richardson extrapolation over h in {1e-3, 1e-4}
  Expr f = parse("exp(x0^2)");
  Expr df = differentiate(f, "x0");
  double sym = eval_at(df, {{"x0", 1.0}});
  auto fn = [&](double v) { return eval_at(f, {{"x0", v}}); };
  double fd = battery_detail::fd_derivative(fn, 1.0);
  REQUIRE(std::abs(sym - fd) <= 1e-7 * std::abs(sym));
  REQUIRE(sym == Catch::Approx(2.0 * std::exp(1.0)).epsilon(1e-12));  // frozen: 5.43656365691809
}

TEST_CASE("differentiate general exponent via exp(g ln f)") {
  Expr f = parse("x0^x1");
  Expr df = differentiate(f, "x0");
  double sym = eval_at(df, {{"x0", 1.3}, {"x1", 2.7}});
  REQUIRE(sym == Catch::Approx(2.7 * std::pow(1.3, 1.7)).epsilon(1e-10));
  // half-integer exponents use the power rule
  Expr h = differentiate(parse("x0^(3/2)"), "x0");
  REQUIRE(eval_at(h, {{"x0", 4.0}}) == Catch::Approx(1.5 * 2.0).epsilon(1e-12));
}

TEST_CASE("simplify identities") {
  REQUIRE(structurally_equal(simplify(parse("0*sin(x0)+x1")), Expr::symbol("x1")));
  REQUIRE(structurally_equal(simplify(parse("x0^1")), Expr::symbol("x0")));
  REQUIRE(structurally_equal(simplify(parse("(2+3)*x0")),
                             Expr::binary(BinaryOp::mul, Expr::integer(5), Expr::symbol("x0"))));
  REQUIRE(is_zero(simplify(parse("sin(x0)-sin(x0)"))));
  REQUIRE(is_zero(simplify(parse("x0 + -1*x0"))));
  REQUIRE(structurally_equal(simplify(parse("--x0")), Expr::symbol("x0")));
  REQUIRE(structurally_equal(simplify(parse("3/2")), Expr::rational(3, 2)));
  REQUIRE(is_one(simplify(parse("cos(0)"))));
}

TEST_CASE("simplify is idempotent and value-preserving on random trees") {
  std::mt19937_64 gen(2024);
  int value_checks = 0;
  for (int k = 0; k < 400; ++k) {
    Expr ast = battery_detail::random_ast(gen, 7);
    Expr s1 = simplify(ast);
    Expr s2 = simplify(s1);
    REQUIRE(structurally_equal(s1, s2));

    PointBinding p;
    p.set("x0", battery_detail::rng_uniform(gen, 0.4, 1.6));
    p.set("x1", battery_detail::rng_uniform(gen, 0.4, 1.6));
    p.set("x2", battery_detail::rng_uniform(gen, 0.4, 1.6));
    try {
      double before = evaluate(ast, p);
      double after = evaluate(s1, p);
      if (std::isfinite(before) && std::abs(before) < 1e12) {
        REQUIRE(std::abs(before - after) <= 1e-12 * std::max(1.0, std::abs(before)));
        ++value_checks;
      }
    } catch (const EvalError&) {
      // domain edge; the value comparison does not apply here
    }
  }
  REQUIRE(value_checks > 150);
}

TEST_CASE("print/parse round trips") {
  // raw round trip on parsed trees
  for (const char* text : {"x0^2 + 3*x1", "-x0^2", "a-b-c", "a-(b-c)", "x0^2^3",
                           "(x0+x1)/(x0-x1)", "sin(x0)*cos(x1)^2", "1/2*x0", "2e3 + 0.5",
                           "-(x0*x1)"}) {
    Expr once = parse(text);
    Expr twice = parse(to_string(once));
    INFO(text << " -> " << to_string(once));
    REQUIRE(structurally_equal(once, twice));
  }

  // structural identity after simplify for 1000 random trees
  std::mt19937_64 gen(7);
  for (int k = 0; k < 1000; ++k) {
    Expr norm = simplify(battery_detail::random_ast(gen, 8));
    Expr back = simplify(parse(to_string(norm)));
    INFO("printed: " << to_string(norm));
    REQUIRE(structurally_equal(norm, back));
  }

  // raw stability: parse(print(parse(t))) equals parse(t) for arbitrary t in
  // the printer's image, no simplify involved
  std::mt19937_64 gen2(8);
  for (int k = 0; k < 500; ++k) {
    Expr t = parse(to_string(battery_detail::random_ast(gen2, 7)));
    Expr again = parse(to_string(t));
    INFO("printed: " << to_string(t));
    REQUIRE(structurally_equal(t, again));
  }
}

TEST_CASE("derivatives agree with finite differences on random trees") {
  std::mt19937_64 gen(99);
  int checked = 0;
  for (int k = 0; k < 250; ++k) {
    Expr ast = simplify(battery_detail::random_ast(gen, 6));
    Expr d = differentiate(ast, "x0");
    for (int attempt = 0; attempt < 20; ++attempt) {
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
          return evaluate(ast, q);
        };
        if (!std::isfinite(sym) || std::abs(sym) > 1e5 || std::abs(f(x0)) > 1e5) continue;
        double fd = battery_detail::fd_derivative(f, x0);
        double fd_check = (f(x0 + 3e-4) - f(x0 - 3e-4)) / 6e-4;
        if (!std::isfinite(fd) ||
            std::abs(fd - fd_check) / std::max({1.0, std::abs(fd), std::abs(fd_check)}) > 1e-7)
          continue;
        REQUIRE(std::abs(sym - fd) / std::max({1.0, std::abs(sym), std::abs(fd)}) <= 1e-6);
        ++checked;
      } catch (const EvalError&) {
      }
    }
  }
  REQUIRE(checked > 500);
}

TEST_CASE("differentiation is linear") {
  std::mt19937_64 gen(17);
  for (int k = 0; k < 100; ++k) {
    Expr f = simplify(battery_detail::random_ast(gen, 5));
    Expr g = simplify(battery_detail::random_ast(gen, 5));
    Expr a = Expr::rational(battery_detail::rng_int(gen, -5, 5), 2);
    Expr b = Expr::rational(battery_detail::rng_int(gen, -5, 5), 3);
    Expr combo = ex_add(ex_mul(a, f), ex_mul(b, g));
    Expr lhs = differentiate(combo, "x0");
    Expr rhs = ex_add(ex_mul(a, differentiate(f, "x0")), ex_mul(b, differentiate(g, "x0")));
    for (int t = 0; t < 5; ++t) {
      PointBinding p;
      p.set("x0", battery_detail::rng_uniform(gen, 0.4, 1.6));
      p.set("x1", battery_detail::rng_uniform(gen, 0.4, 1.6));
      p.set("x2", battery_detail::rng_uniform(gen, 0.4, 1.6));
      try {
        double l = evaluate(lhs, p);
        double r = evaluate(rhs, p);
        if (std::isfinite(l) && std::abs(l) < 1e9)
          REQUIRE(std::abs(l - r) <= 1e-9 * std::max(1.0, std::abs(l)));
      } catch (const EvalError&) {
      }
    }
  }
}

TEST_CASE("number arithmetic stays exact until it cannot") {
  Number a = Number::rational(1, 3);
  Number b = Number::rational(1, 6);
  Number sum = a + b;
  REQUIRE(sum.exact());
  REQUIRE(sum.num() == 1);
  REQUIRE(sum.den() == 2);

  Number huge = Number::integer(1LL << 62);
  Number overflowed = huge * huge;
  REQUIRE_FALSE(overflowed.exact());
  REQUIRE(overflowed.value() == Catch::Approx(std::pow(2.0, 124)));

  Number r;
  REQUIRE(Number::rational(9, 4).exact_sqrt(&r));
  REQUIRE(r.num() == 3);
  REQUIRE(r.den() == 2);
  REQUIRE_FALSE(Number::integer(2).exact_sqrt(&r));
}
