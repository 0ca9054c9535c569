#include "support.hpp"

#include <doctest.h>

using namespace algcoef;
using testing_support::P;
using testing_support::Q;

TEST_CASE("parse catalan minimal polynomial") {
  VarList v{"Y", "x"};
  MultiPoly p = P("x*Y^2 - Y + 1", v);
  CHECK(p.size() == 3);
  CHECK(p.coefficient({2, 1}) == 1);
  CHECK(p.coefficient({1, 0}) == -1);
  CHECK(p.coefficient({0, 0}) == 1);
}

TEST_CASE("parse zero and constants") {
  VarList v{"Y", "x"};
  CHECK(P("0", v).is_zero());
  CHECK(P("3/6", v).constant_term() == Q("1/2"));
  CHECK(P("-(x - 1)^2", v) == P("-x^2 + 2*x - 1", v));
  CHECK(P(" ( Y + x ) * ( Y - x ) ", v) == P("Y^2 - x^2", v));
}

TEST_CASE("parse errors carry offsets and names") {
  VarList v{"Y", "x"};
  try {
    P("x*^2", v);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
  }
  try {
    P("x + z", v);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
  CHECK_THROWS_AS(P("x +", v), ParseError);
  CHECK_THROWS_AS(P("(x", v), ParseError);
  CHECK_THROWS_AS(P("x^-1", v), ParseError);
  CHECK_THROWS_AS(P("1/0", v), ParseError);
}

TEST_CASE("render round trip") {
  VarList v{"Y", "x", "y"};
  for (const char* s : {"x*Y^2 - Y + 1", "-Y", "1/3*x*y - 2/7", "Y^3*y + x^2 - x*y^4", "0"}) {
    MultiPoly p = P(s, v);
    CHECK(P(p.to_string(), v) == p);
  }
}

TEST_CASE("derivatives") {
  VarList v{"Y", "x"};
  CHECK(partial_derivative(P("x*Y^2 - Y + 1", v), "Y") == P("2*x*Y - 1", v));
  CHECK(partial_derivative(P("5", v), "x").is_zero());
  // Callan polynomial with a = 1, b = 4.
  MultiPoly callan = P("4*x^2*Y^2 + (8*x^2 + x - 1)*Y + 4*x^2 + x", v);
  CHECK(partial_derivative(callan, "Y") == P("8*x^2*Y + 8*x^2 + x - 1", v));
  CHECK_THROWS_AS(partial_derivative(callan, "z"), ValidationError);
}

TEST_CASE("substitution") {
  VarList v{"Y", "x"};
  MultiPoly p = P("Y^2 - Y + x", v);
  CHECK(substitute(p, {{"x", P("Y*x", v)}}) == P("Y^2 - Y + Y*x", v));
  CHECK(substitute(P("x*Y^2 - Y + 1", v), {{"x", P("0", v)}}) == P("1 - Y", v));
  VarList w{"Y", "x", "y"};
  MultiPoly narayana = P("x*Y^2 - Y*(1 - x*(y - 1)) + 1", w);
  CHECK(substitute(narayana, {{"y", P("1", w)}}) == P("x*Y^2 - Y + 1", w));
}

TEST_CASE("evaluation") {
  VarList v{"Y", "x"};
  std::vector<Rational> a{Q("1/2"), Q("1/2")};
  CHECK(evaluate(P("1 - Y - x", v), std::span<const Rational>(a)) == 0);
  std::vector<Rational> b{Q("2"), Q("1/4")};
  CHECK(evaluate(P("x*Y^2 - Y + 1", v), std::span<const Rational>(b)) == 0);
  Point bad{{Rational(1), Rational(2), Rational(3)}};
  CHECK_THROWS_AS(evaluate(P("Y + x", v), bad), ValidationError);
  Point mixed{{Rational(1), Real(2)}};
  Number n = evaluate(P("Y*x + 1", v), mixed);
  REQUIRE(std::holds_alternative<Real>(n));
  CHECK(std::get<Real>(n) == 3);
}

TEST_CASE("resultants") {
  VarList v{"Y", "a", "b"};
  CHECK(resultant(P("Y - a", v), P("Y - b", v), "Y") == P("a - b", v));
  VarList w{"Y", "x"};
  CHECK(resultant(P("Y^2 - x", w), P("Y", w), "Y") == P("-x", w));
  CHECK(discriminant(P("x*Y^2 - Y + 1", w), 0) == P("1 - 4*x", w));
  CHECK_THROWS_AS(resultant(P("x", w), P("x + 1", w), "Y"), ValidationError);
}

TEST_CASE("content and exact division") {
  VarList v{"Y", "x"};
  MultiPoly p = P("2*x*Y^2 - 4*x*Y + 6*x^2*Y", v);
  CHECK(monomial_content(p) == Exponents{1, 1});
  CHECK(rational_content(p) == 2);
  CHECK(primitive_part(p) == P("Y - 2 + 3*x", v));
  auto q = divide_exact(P("Y^2 - x^2", v), P("Y - x", v));
  REQUIRE(q);
  CHECK(*q == P("Y + x", v));
  CHECK_FALSE(divide_exact(P("Y^2 + x^2", v), P("Y - x", v)));
}

TEST_CASE("univariate helpers") {
  UniPoly p{Rational(-6), Rational(11), Rational(-6), Rational(1)};  // (t-1)(t-2)(t-3)
  auto roots = uni_rational_roots(p);
  CHECK(roots.size() == 3);
  UniPoly sq{Rational(1), Rational(-2), Rational(1)};  // (t-1)^2
  CHECK(uni_squarefree(sq).size() == 2);
  CHECK(uni_gcd(p, sq) == UniPoly{Rational(-1), Rational(1)});
}
