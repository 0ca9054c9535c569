#include "support.hpp"

#include "algcoef/embed.hpp"
#include "algcoef/structure.hpp"

#include <doctest.h>

using namespace algcoef;
using testing_support::P;

namespace {

void check_fraction(const EmbeddingResult& e, const MultiPoly& g, const MultiPoly& h) {
  CHECK(e.numerator.to_string() == g.to_string());
  CHECK(e.denominator.to_string() == h.to_string());
}

}  // namespace

TEST_CASE("hypotheses") {
  VarList v{"Y", "x"};
  CHECK(check_h2(P("x*Y^2 - Y + 1", v)));
  CHECK_FALSE(check_h2(P("Y^3 - x*Y + x^2", v)));
  CHECK(check_h2(P("Y - x", v)));
  CHECK(check_h1(P("Y - x", v), "x"));

  VarList w{"Y", "x", "y"};
  MultiPoly narayana = P("x*Y^2 - Y*(1 - x*(y - 1)) + 1", w);
  CHECK(check_h1(additive_shift(narayana, P("1", w)), "x"));

  VarList c{"Y", "x", "z"};
  MultiPoly cossali = P("x*Y^2 - (1 - z)*Y + 1", c);
  CHECK_FALSE(check_h1(additive_shift(cossali, P("1", c)), "x"));
  CHECK_THROWS_AS(check_h1(P("Y^3 - x*Y + x^2", v), "x"), MathFailure);
}

TEST_CASE("additive shift") {
  VarList v{"Y", "x"};
  MultiPoly catalan = P("x*Y^2 - Y + 1", v);
  CHECK(additive_shift(catalan, P("1", v)) == P("x*Y^2 + 2*x*Y - Y + x", v));
  CHECK(additive_shift(catalan, P("0", v)) == catalan);
  CHECK_THROWS_AS(additive_shift(catalan, P("Y", v)), ValidationError);

  // The shifted polynomial annihilates f - x - y.
  VarList w{"Y", "x", "y"};
  MultiPoly assembly = P("Y^2 - 2*Y + 2*x - x^2 + 2*y - y^2", w);
  MultiPoly shifted = additive_shift(assembly, P("x + y", w));
  TruncatedSeries f = branch_expand(assembly, 8);
  TruncatedSeries g = branch_expand(shifted, 8);
  VarList xy{"x", "y"};
  CHECK(f - g == TruncatedSeries::from_poly(P("x + y", xy), xy, 8));
}

TEST_CASE("monomial substitution") {
  VarList c{"Y", "x", "z"};
  MultiPoly cossali = additive_shift(P("x*Y^2 - (1 - z)*Y + 1", c), P("1", c));
  auto [q, map] = monomial_substitution(cossali, "z", "x");
  CHECK(q == P("Y^2*x + Y*x*z + 2*Y*x + x*z - Y + x", c));
  CHECK(map.matrix == std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 1}});

  VarList w{"Y", "x", "y", "z"};
  MultiPoly p = P("Y - x", w);
  auto [same, m1] = monomial_substitution(p, "z", "y");
  CHECK(same == p);
  auto [q2, m2] = monomial_substitution(same, "y", "x");
  IndexMap both = m1.then(m2);
  // z ↦ y·z then y ↦ x·y: z contributes to y and x.
  CHECK(both.matrix == std::vector<std::vector<std::int64_t>>{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}});
  CHECK_THROWS_AS(monomial_substitution(p, "Y", "x"), ValidationError);
  CHECK_THROWS_AS(monomial_substitution(p, "x", "x"), ValidationError);
}

TEST_CASE("multiplicative shift") {
  VarList v{"Y", "x"};
  CHECK(multiplicative_shift(P("x*Y^2 - Y + 1", v), "x", 1) == P("Y^2 - Y + x", v));
  CHECK(multiplicative_shift(P("Y - 1", v), "x", 1) == P("Y - x", v));
  MultiPoly ternary = multiplicative_shift(P("x*Y^3 - Y + 1", v), "x", 1);
  CHECK(ternary == P("Y^3 - x*Y + x^2", v));
  CHECK_FALSE(check_h2(ternary));
}

TEST_CASE("catalan embeddings") {
  VarList v{"Y", "x"};
  EmbeddingResult f2 = safonov_embed(P("Y^2 - Y + x", v), "x");
  check_fraction(f2, P("Y*(1 - 2*Y)", v), P("1 - Y - x", v));
  CHECK(verify_embedding(f2, P("Y^2 - Y + x", v), 10));

  EmbeddingResult bad = f2;
  bad.numerator = P("Y", v);
  CHECK_FALSE(verify_embedding(bad, P("Y^2 - Y + x", v), 10));

  MultiPoly c1 = P("x*Y^2 + 2*x*Y - Y + x", v);
  EmbeddingResult f1 = safonov_embed(c1, "x");
  check_fraction(f1, P("Y*(1 - 2*Y^2*x - 2*Y*x)", v), P("1 - (Y^2*x + 2*Y*x + x)", v));
  CHECK(verify_embedding(f1, c1, 10));

  EmbeddingResult k2 = safonov_embed(P("Y^2 - Y + x", v), "x", 2);
  CHECK(k2.multiplicity == 2);
  CHECK(k2.warnings.size() == 1);
  CHECK_THROWS_AS(safonov_embed(P("Y^2 - Y + x + 1", v), "x"), MathFailure);
}

TEST_CASE("narayana embedding specializes to catalan") {
  VarList w{"Y", "x", "y"};
  MultiPoly narayana = additive_shift(P("x*Y^2 - Y*(1 - x*(y - 1)) + 1", w), P("1", w));
  EmbeddingResult e = safonov_embed(narayana, "x");
  check_fraction(e, P("Y*(1 - (2*Y^2*x + Y*x*y + Y*x))", w),
                 P("1 - (Y^2*x + Y*x*y + Y*x + x*y)", w));
  CHECK(verify_embedding(e, narayana, 8));
  std::map<std::string, MultiPoly> at_one{{"y", P("1", w)}};
  CHECK(substitute(e.numerator, at_one) == P("Y*(1 - 2*Y^2*x - 2*Y*x)", w));
  CHECK(substitute(e.denominator, at_one) == P("1 - (Y^2*x + 2*Y*x + x)", w));
}

TEST_CASE("worked embeddings") {
  VarList w{"Y", "x", "y"};
  // Dissections of polygons.
  EmbeddingResult d = safonov_embed(P("x*y^2*(1 + Y)^2 + x*y*(1 + Y)*Y - Y", w), "x");
  check_fraction(d, P("Y*(1 - (2*Y^2*x*y^2 + 2*Y^2*x*y + 2*Y*x*y^2 + Y*x*y))", w),
                 P("1 - (Y^2*x*y^2 + Y^2*x*y + 2*Y*x*y^2 + Y*x*y + x*y^2)", w));

  // Assembly trees after removing x + y.
  MultiPoly assembly =
      additive_shift(P("Y^2 - 2*Y + 2*x - x^2 + 2*y - y^2", w), P("x + y", w));
  EmbeddingResult a = safonov_embed(assembly, "x");
  check_fraction(a, P("Y*(1 - (Y*x + Y + y))", w), P("1 - (Y*x + x*y + 1/2*Y + y)", w));

  // Callan family, a = 1, b = 4.
  VarList v{"Y", "x"};
  MultiPoly callan = additive_shift(P("4*x^2*Y^2 - (1 - x)*Y + 1", v), P("1", v));
  EmbeddingResult c = safonov_embed(callan, "x");
  check_fraction(c, P("Y*(1 - (8*Y^3*x^2 + 8*Y^2*x^2 + Y*x))", v),
                 P("1 - (4*Y^3*x^2 + 8*Y^2*x^2 + 4*Y*x^2 + Y*x + x)", v));
}

TEST_CASE("pipeline search") {
  VarList v{"Y", "x"};
  EmbeddingResult catalan = embed_problem(P("x*Y^2 - Y + 1", v), 1, {}, {});
  CHECK(catalan.pivot == "x");
  CHECK(catalan.denominator == P("1 - (Y^2*x + 2*Y*x + x)", v));
  CHECK(verify_embedding(catalan, catalan.preprocessed, 12));

  EmbeddingResult shifted =
      embed_problem(P("x*Y^2 - Y + 1", v), 1, {PreprocStep::multiplicative("x")}, {});
  CHECK(shifted.denominator == P("1 - Y - x", v));
  CHECK(shifted.map.offset == std::vector<std::int64_t>{1, 1});
  CHECK(verify_embedding(shifted, shifted.preprocessed, 12));

  // Schröder trees: the unshifted embeddings are not combinatorial.
  VarList w{"Y", "x", "y"};
  EmbeddingResult s = embed_problem(P("Y - Y^2 - x*y + x*y*Y - y*Y^2", w), 0, {}, {});
  REQUIRE(s.trail.size() == 1);
  CHECK(s.trail[0].shift == P("x*y", w));
  CHECK(s.pivot == "x");
  CHECK(combinatorial_certificate(s.denominator).certified());
  CHECK(s.warnings.empty());
  CHECK(verify_embedding(s, s.preprocessed, 10));

  // Cossali: substitution z -> x*z before removing the constant.
  VarList c{"Y", "x", "z"};
  EmbeddingResult l = embed_problem(P("x*Y^2 - (1 - z)*Y + 1", c), 1,
                                    {PreprocStep::monomial("z", "x")}, {});
  CHECK(l.preprocessed == P("Y^2*x + Y*x*z + 2*Y*x + x*z - Y + x", c));
  CHECK(l.map.matrix == std::vector<std::vector<std::int64_t>>{{1, 1}, {1, 1}, {0, 1}});
  CHECK(verify_embedding(l, l.preprocessed, 10));

  try {
    embed_problem(P("x*Y^3 - Y + 1", v), 1, {PreprocStep::multiplicative("x")}, {});
    FAIL("expected H2 failure");
  } catch (const MathFailure& e) {
    CHECK(e.kind() == FailureKind::kDegenerateBranch);
  }
}

TEST_CASE("default branch constants") {
  VarList v{"Y", "x"};
  CHECK(default_branch_constant(P("Y^2 - Y + x", v)) == 0);
  CHECK(default_branch_constant(P("x*Y^2 - Y + 1", v)) == 1);
  CHECK_THROWS_AS(default_branch_constant(P("Y^2*(1 - x) - 1", v)), ValidationError);
}
