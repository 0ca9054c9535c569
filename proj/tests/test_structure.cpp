#include "support.hpp"

#include "algcoef/structure.hpp"

#include <doctest.h>

using namespace algcoef;
using testing_support::P;

TEST_CASE("combinatorial certificates") {
  VarList v{"Y", "x"};
  auto c = combinatorial_certificate(P("1 - Y - x", v));
  CHECK(c.certified());
  CHECK(c.k == P("Y + x", v));
  CHECK(c.normalizer == 1);

  auto callan = combinatorial_certificate(
      P("1 - (4*Y^3*x^2 + 8*Y^2*x^2 + 4*Y*x^2 + Y*x + x)", v));
  CHECK(callan.certified());

  VarList x{"x"};
  auto bad = combinatorial_certificate(P("1 - x + x^2", x));
  CHECK_FALSE(bad.certified());
  CHECK(bad.k == P("x - x^2", x));

  auto scaled = combinatorial_certificate(P("2 - Y - x", v));
  CHECK(scaled.certified());
  CHECK(scaled.normalizer == 2);
  CHECK_THROWS_AS(combinatorial_certificate(P("Y + x", v)), ValidationError);
}

TEST_CASE("aperiodicity") {
  VarList v{"Y", "x"};
  CHECK(aperiodicity_check(P("Y + x", v)));
  CHECK_FALSE(aperiodicity_check(P("Y^2 + x^2", v)));
  CHECK(support_lattice(P("Y^2 + x^2", v)).index == 4);
  CHECK(aperiodicity_check(P("4*Y^3*x^2 + 8*Y^2*x^2 + 4*Y*x^2 + Y*x + x", v)));
  CHECK(aperiodicity_check(P("Y*x + Y*x^2", v)));
  CHECK_FALSE(aperiodicity_check(P("Y*x", v)));
  CHECK(support_lattice(P("Y*x", v)).rank == 1);
}

TEST_CASE("hermite normal form") {
  std::vector<std::vector<Integer>> rows{{2, 0}, {0, 3}, {4, 6}};
  auto h = hermite_normal_form(rows);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == std::vector<Integer>{2, 0});
  CHECK(h[1] == std::vector<Integer>{0, 3});
  auto g = hermite_normal_form({{3, 5}, {2, 3}});
  CHECK(g == std::vector<std::vector<Integer>>{{1, 0}, {0, 1}});
}
