#include "support.hpp"

#include "algcoef/critical.hpp"

#include <doctest.h>

using namespace algcoef;
using testing_support::P;
using testing_support::Q;

namespace {

double as_double(const Real& r) { return r.convert_to<double>(); }

Real rel_err(const Complex& got, const Real& want) {
  return abs(got - Complex(want)) / boost::multiprecision::abs(want);
}

const MultiPoly& callan_h(int a, int b) {
  static std::map<std::pair<int, int>, MultiPoly> cache;
  VarList v{"Y", "x"};
  auto key = std::make_pair(a, b);
  if (!cache.count(key)) {
    std::string s = "1 - (" + std::to_string(b) + "*Y^3*x^2 + " + std::to_string(2 * b) +
                    "*Y^2*x^2 + " + std::to_string(b) + "*Y*x^2 + " + std::to_string(a) +
                    "*Y*x + " + std::to_string(a) + "*x)";
    cache.emplace(key, P(s, v));
  }
  return cache.at(key);
}

}  // namespace

TEST_CASE("critical systems") {
  VarList v{"Y", "x"};
  auto sys = critical_system(P("1 - Y - x", v), {1, 1});
  REQUIRE(sys.size() == 2);
  CHECK(sys[0] == P("1 - Y - x", v));
  CHECK(sys[1] == P("Y - x", v));
  // Scaling the direction only rescales the equations.
  CHECK(critical_system(callan_h(1, 4), {2, 2}) == critical_system(callan_h(1, 4), {1, 1}));
  CHECK_THROWS_AS(critical_system(P("1 - Y - x", v), {1, 0}), ValidationError);
  CHECK_THROWS_AS(critical_system(P("1 - Y - x", v), {1}), ValidationError);
}

TEST_CASE("linear denominator") {
  VarList v{"Y", "x"};
  auto pts = solve_critical(critical_system(P("1 - Y - x", v), {1, 1}));
  REQUIRE(pts.size() == 1);
  CHECK(as_double(rel_err(pts[0].coords[0], Real(0.5))) < 1e-30);
  CHECK(pts[0].positive == Tri::kYes);
  CHECK(pts[0].residual < Real(1e-30));
}

TEST_CASE("callan critical points") {
  // The exact resultant in x is 16x^6(45x^2 + 24x - 4), with roots 2/15 and
  // -2/3; H vanishes exactly at (Y, x) = (3/2, 2/15) and (1/2, -2/3).
  VarList v{"Y", "x"};
  auto sys = critical_system(callan_h(1, 4), {1, 1});
  CHECK(resultant(sys[0], sys[1], 0) == P("720*x^8 + 384*x^7 - 64*x^6", v));
  for (auto pt : {std::vector<Rational>{Q("3/2"), Q("2/15")}, std::vector<Rational>{Q("1/2"), Q("-2/3")}})
    for (const auto& s : sys) CHECK(evaluate(s, std::span<const Rational>(pt)) == 0);

  auto pts = solve_critical(sys);
  REQUIRE(pts.size() == 2);
  CHECK(as_double(rel_err(pts[0].coords[0], Real(1) / 2)) < 1e-25);
  CHECK(as_double(rel_err(pts[0].coords[1], Real(-2) / 3)) < 1e-25);
  CHECK(as_double(rel_err(pts[1].coords[0], Real(3) / 2)) < 1e-25);
  CHECK(as_double(rel_err(pts[1].coords[1], Real(2) / 15)) < 1e-25);
  CHECK(pts[0].positive == Tri::kNo);
  for (auto& p : pts) CHECK(smoothness_check(callan_h(1, 4), p));
  CombCertificate cert = combinatorial_certificate(callan_h(1, 4));
  CriticalPoint w = select_minimal(pts, cert, aperiodicity_check(cert.k));
  CHECK(w.minimal == Tri::kYes);
  CHECK(as_double(rel_err(w.coords[1], Real(2) / 15)) < 1e-25);
  // Generic parameters give two points; at b = a^2/4 the second one leaves
  // the affine chart.
  CHECK(solve_critical(critical_system(callan_h(3, 2), {1, 1})).size() == 2);
  CHECK(solve_critical(critical_system(callan_h(2, 1), {1, 1})).size() == 1);
  CHECK(solve_critical(critical_system(callan_h(1, 1), {1, 1})).size() == 1);
}

TEST_CASE("dissections") {
  VarList w{"Y", "x", "y"};
  MultiPoly h = P("1 - (Y^2*x*y^2 + Y^2*x*y + 2*Y*x*y^2 + Y*x*y + x*y^2)", w);
  CombCertificate cert = combinatorial_certificate(h);
  REQUIRE(cert.certified());
  auto pts = solve_critical(critical_system(h, {Q("2/5"), Q("2/5"), Q("3/5")}));
  CriticalPoint m = select_minimal(pts, cert, aperiodicity_check(cert.k));
  CHECK(as_double(rel_err(m.coords[0], Real(1) / 2)) < 1e-25);
  CHECK(as_double(rel_err(m.coords[1], Real(2))) < 1e-25);
  CHECK(as_double(rel_err(m.coords[2], Real(1) / 3)) < 1e-25);

  auto quarter = solve_critical(critical_system(h, {Q("1/4"), Q("1/4"), Q("3/4")}));
  try {
    select_minimal(quarter, cert, true);
    FAIL("expected no positive point");
  } catch (const MathFailure& e) {
    CHECK(e.kind() == FailureKind::kNoPositiveCriticalPoint);
  }
}

TEST_CASE("smoothness") {
  VarList v{"Y", "x"};
  CriticalPoint p;
  p.coords = {Complex(Real(0.5)), Complex(Real(0.5))};
  CHECK(smoothness_check(P("1 - Y - x", v), p));
  CHECK_FALSE(smoothness_check(P("(1 - Y - x)^2", v), p));
  CHECK(p.smooth == Tri::kNo);
}

TEST_CASE("selection needs certificates") {
  VarList v{"Y", "x"};
  auto pts = solve_critical(critical_system(P("1 - Y - x", v), {1, 1}));
  CombCertificate unknown = combinatorial_certificate(P("1 - Y + x", v));
  CHECK_THROWS_AS(select_minimal(pts, unknown, true), MathFailure);
  CombCertificate ok = combinatorial_certificate(P("1 - Y - x", v));
  CHECK_THROWS_AS(select_minimal(pts, ok, false), MathFailure);
}

TEST_CASE("polynomial roots") {
  PrecisionScope scope(256);
  // (t - 1)(t - 2)(t^2 + 1)
  std::vector<Complex> c{Complex(Real(2)), Complex(Real(-3)), Complex(Real(3)), Complex(Real(-3)),
                         Complex(Real(1))};
  auto roots = polynomial_roots(c);
  REQUIRE(roots.size() == 4);
  for (const auto& r : roots) {
    Complex p = c[4];
    for (int k = 3; k >= 0; --k) p = p * r + c[k];
    CHECK(as_double(abs(p)) < 1e-60);
  }
}
