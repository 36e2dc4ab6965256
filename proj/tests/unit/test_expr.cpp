#include <cmath>

#include "doctest.h"
#include "symred/eval.hpp"
#include "symred/parse.hpp"
#include "symred/sampling.hpp"

using namespace symred;

namespace {

Binding at(std::initializer_list<std::pair<const char*, double>> vals) {
  Binding b;
  for (auto& [k, v] : vals) b.values[k] = v;
  return b;
}

}  // namespace

TEST_CASE("rational stays in lowest terms") {
  Rational r(BigInt(6), BigInt(-4));
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational::parse("0.125") == Rational(BigInt(1), BigInt(8)));
  CHECK(Rational::parse("-3/2") == Rational(BigInt(-3), BigInt(2)));
  CHECK(Rational::from_double(0.75) == Rational(BigInt(3), BigInt(4)));
  CHECK(Rational(BigInt(2), BigInt(3)).pow(-2) == Rational(BigInt(9), BigInt(4)));
}

TEST_CASE("normalization basics") {
  Expr x = Expr::variable("x");
  CHECK(to_string((2 * x) * (3 * x)) == "6*x^2");
  CHECK((x + 0) == x);
  CHECK((x - x).is_zero());
  CHECK(Pow(Expr(4), Rational(1, 2)) == Expr(2));
  CHECK(Pow(Expr(Rational(BigInt(8), BigInt(27))), Rational(-2, 3)) == Expr(Rational(BigInt(9), BigInt(4))));
  Expr i = Expr::imaginary_unit();
  CHECK((i * i) == Expr(-1));
  CHECK(Exp(Ln(x)) == x);
  CHECK(Sqrt(x) == Pow(x, Rational(1, 2)));
  CHECK(Pow(Pow(x, 2), Rational(1, 2)).kind() == NodeKind::Power);
  CHECK(Pow(Pow(x, Rational(1, 2)), 2) == x);
}

TEST_CASE("sum and product invariants hold after normalization") {
  Expr x = Expr::variable("x"), y = Expr::variable("y");
  Expr e = normalize(Expr::raw_sum({Expr::raw_product({x, Expr(1)}), Expr::raw_sum({y, Expr(0)})}));
  CHECK(e.kind() == NodeKind::Sum);
  CHECK(e.children().size() == 2);
  CHECK(normalize(Expr::raw_power(x, Rational(1))) == x);
  CHECK(normalize(Expr::raw_power(x, Rational(0))).is_one());
}

TEST_CASE("parse and print jet expressions") {
  auto u1 = make_symbol("u1", {"x", "y", "z", "t"}, true);
  Expr e = parse_expression("y*d(u1,x) - x*d(u1,y)", {u1});
  CHECK(e.kind() == NodeKind::Sum);
  CHECK(e.children().size() == 2);
  for (const auto& t : e.children()) CHECK(t.kind() == NodeKind::Product);
  CHECK(to_string(parse_expression("d(u1,x,y)", {u1})) == "d(u1,x,y)");
  CHECK(to_string(parse_expression("u1", {u1})) == "u1");

  auto alpha = make_symbol("alpha", {"t"});
  Expr d2 = parse_expression("d(alpha,t,t)", {alpha});
  REQUIRE(d2.kind() == NodeKind::FunctionApp);
  CHECK(d2.derivs() == std::vector<int>{2});
  CHECK(to_string(d2) == "d(alpha,t,t)");
}

TEST_CASE("parse the Coulomb-like velocity component") {
  auto a = make_symbol("a", {"t"});
  Expr e = parse_expression("a(t)*x*(x^2+y^2+z^2)^(-3/2)", {a});
  Expr again = parse_expression(to_string(e), {a});
  CHECK(again == e);
  Binding b = at({{"x", 1}, {"y", 2}, {"z", 2}, {"t", 1}});
  b.functions["a"] = parse_expression("t^2 + 1");
  CHECK(std::abs(evaluate(e, b) - Complex(2.0 / 27.0)) < 1e-15);
}

TEST_CASE("parse errors carry positions") {
  auto a = make_symbol("a", {"t"});
  try {
    parse_expression("x +\n  * y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_expression("b(t)", {a}), ParseError);
  CHECK_THROWS_AS(parse_expression("x^y"), ParseError);
  CHECK_THROWS_AS(parse_expression("(x+1"), ParseError);
  CHECK_THROWS_AS(parse_expression("d(a, x)", {a}), ParseError);
}

TEST_CASE("parse context constants") {
  ParseContext ctx;
  ctx.constants["k"] = Expr(-2);
  Expr e = parse_expression("t^k", ctx);
  CHECK(e == Pow(Expr::variable("t"), Rational(-2)));
  CHECK(parse_expression("diff(x^3, x)") == parse_expression("3*x^2"));
}

TEST_CASE("differentiation rules") {
  Expr x = Expr::variable("x");
  CHECK(differentiate(Expr(5), "x").is_zero());
  auto a = make_symbol("a", {"t"});
  Expr r = Expr::variable("r");
  Expr ea = Expr::function(a, {Expr::variable("t")});
  CHECK(differentiate(ea / Pow(r, 3), "r") == -3 * ea / Pow(r, 4));
  Expr da = differentiate(ea, "t");
  REQUIRE(da.kind() == NodeKind::FunctionApp);
  CHECK(da.derivs() == std::vector<int>{1});
  auto u = make_symbol("u", {"x", "t"}, true);
  Expr ux = differentiate(differentiate(Expr::function(u, {x, Expr::variable("t")}), "x"), "t");
  CHECK(to_string(ux) == "d(u,x,t)");
  CHECK(partial(Expr::variable("x") * ux, PartialTarget::variable("x")) == ux);
  CHECK(partial(x * ux, PartialTarget::jet("u", {1, 1})) == x);
}

TEST_CASE("evaluation") {
  CHECK(evaluate(parse_expression("x^2 + y^2"), at({{"x", 3}, {"y", 4}})) == Complex(25));
  CHECK(std::abs(bessel_i(Rational(0), 1.0) - Complex(1.2660658777520084)) < 1e-15);
  Expr w = parse_expression("(4*t^3 + c1)/(t^4 + c1*t + c2)");
  CHECK(std::abs(evaluate(w, at({{"t", 1}, {"c1", 1}, {"c2", 1}})) - Complex(5.0 / 3.0)) < 1e-15);
  CHECK_THROWS_AS(evaluate(parse_expression("1/x"), at({{"x", 0}})), PointRejected);
  CHECK_THROWS_AS(evaluate(parse_expression("y"), at({{"x", 0}})), UnboundSymbol);
  EvalOptions real{Branch::RealDomain};
  CHECK_THROWS_AS(evaluate(parse_expression("sqrt(x)"), at({{"x", -1}}), real), PointRejected);
  CHECK(std::abs(evaluate(parse_expression("sqrt(x)"), at({{"x", -1}})) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(evaluate(parse_expression("x^(1/3)"), at({{"x", -8}}), real) - Complex(-2)) < 1e-14);
  CHECK_THROWS_AS(bessel_i(Rational(1), 31.0), PointRejected);
}

TEST_CASE("numeric equivalence") {
  CHECK(numeric_equiv(parse_expression("(x+y)^2"), parse_expression("x^2+2*x*y+y^2")));
  CHECK(numeric_equiv(parse_expression("x/t"), parse_expression("x*t^(-1)")));
  CHECK_FALSE(numeric_equiv(parse_expression("x"), parse_expression("x + 1/1000")));
}

TEST_CASE("function instantiation is seeded and consistent") {
  auto a = make_symbol("a", {"t"});
  Expr e = parse_expression("a(t)", {a});
  Instantiation i1 = instantiate_functions(e, 7);
  Instantiation i2 = instantiate_functions(e, 7);
  CHECK(i1.expr == i2.expr);
  CHECK_FALSE(i1.expr == instantiate_functions(e, 8).expr);
  Expr de = instantiate_functions(parse_expression("d(a,t)", {a}), 7).expr;
  CHECK(de == differentiate(i1.expr, "t"));
  auto lam = make_symbol("lambda", {"xi1", "xi2"});
  Expr l = instantiate_functions(parse_expression("lambda(x/t, y)", {lam}), 3).expr;
  CHECK(opaque_symbols(l).empty());
  CHECK(depends_on(l, "x"));
}
