#include "algcoef/embed.hpp"

#include "algcoef/structure.hpp"

#include <algorithm>
#include <set>

namespace algcoef {

// ---------------------------------------------------------------- steps

PreprocStep PreprocStep::additive(MultiPoly f0) {
  PreprocStep s;
  s.kind = Kind::kAdditiveShift;
  s.shift = std::move(f0);
  return s;
}

PreprocStep PreprocStep::monomial(std::string source, std::string carrier) {
  PreprocStep s;
  s.kind = Kind::kMonomialSub;
  s.source = std::move(source);
  s.carrier = std::move(carrier);
  return s;
}

PreprocStep PreprocStep::multiplicative(std::string variable) {
  PreprocStep s;
  s.kind = Kind::kMultiplicativeShift;
  s.variable = std::move(variable);
  return s;
}

std::string PreprocStep::describe() const {
  switch (kind) {
    case Kind::kAdditiveShift: return "subtract " + shift.to_string();
    case Kind::kMonomialSub: return "substitute " + source + " -> " + carrier + "*" + source;
    case Kind::kMultiplicativeShift: return "multiply by " + variable;
  }
  return "";
}

// ---------------------------------------------------------------- index maps

IndexMap IndexMap::identity(std::size_t n) {
  IndexMap m;
  m.matrix.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m.matrix[i][i] = 1;
  m.offset.assign(n, 0);
  return m;
}

std::vector<std::int64_t> IndexMap::apply(const std::vector<std::int64_t>& r) const {
  if (r.size() != cols()) throw ValidationError("index map applied to a vector of wrong length");
  std::vector<std::int64_t> out(offset);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) out[i] += matrix[i][j] * r[j];
  return out;
}

std::vector<Rational> IndexMap::apply_linear(const std::vector<Rational>& r) const {
  if (r.size() != cols()) throw ValidationError("index map applied to a vector of wrong length");
  std::vector<Rational> out(rows(), Rational(0));
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (matrix[i][j] != 0) out[i] += Rational(static_cast<long>(matrix[i][j])) * r[j];
  return out;
}

IndexMap IndexMap::then(const IndexMap& next) const {
  if (next.cols() != rows()) throw ValidationError("index maps do not compose");
  IndexMap out;
  out.matrix.assign(next.rows(), std::vector<std::int64_t>(cols(), 0));
  for (std::size_t i = 0; i < next.rows(); ++i)
    for (std::size_t k = 0; k < rows(); ++k) {
      if (next.matrix[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols(); ++j) out.matrix[i][j] += next.matrix[i][k] * matrix[k][j];
    }
  out.offset = next.apply(offset);
  return out;
}

// ---------------------------------------------------------------- hypotheses

namespace {

std::vector<Rational> origin_with(std::size_t n, const Rational& y) {
  std::vector<Rational> pt(n, Rational(0));
  pt[0] = y;
  return pt;
}

Rational value_at(const MultiPoly& p, const Rational& y) {
  auto pt = origin_with(p.vars().size(), y);
  return evaluate(p, std::span<const Rational>(pt));
}

void require_non_embedding_var(const MultiPoly& p, std::string_view v, const char* role) {
  if (p.vars().index_of(v) == 0)
    throw ValidationError(std::string(role) + " must not be the embedding variable " +
                          p.vars()[0]);
}

MultiPoly zero_out(const MultiPoly& p, std::initializer_list<std::size_t> vars) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    bool keep = true;
    for (std::size_t v : vars)
      if (e[v] != 0) keep = false;
    if (keep) r.add_term(e, c);
  }
  return r;
}

}  // namespace

bool check_h2(const MultiPoly& p) { return value_at(partial_derivative(p, 0), 0) != 0; }

bool check_h1(const MultiPoly& p, std::string_view v) {
  require_non_embedding_var(p, v, "pivot");
  if (!check_h2(p))
    throw MathFailure(FailureKind::kDegenerateBranch,
                      "H2 fails: dP/dY vanishes at the origin");
  return zero_out(p, {0, p.vars().index_of(v)}).is_zero();
}

Rational default_branch_constant(const MultiPoly& p) {
  if (value_at(p, 0) == 0 && check_h2(p)) return 0;
  MultiPoly at_origin(p.vars());
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) == e[0]) at_origin.add_term(e, c);
  UniPoly u = to_univariate(at_origin, 0);
  trim(u);
  if (u.empty())
    throw ValidationError("P(Y, 0) vanishes identically; the branch at the origin is not determined");
  UniPoly du = uni_derivative(u);
  std::vector<Rational> simple;
  for (const Rational& r : uni_rational_roots(u))
    if (uni_evaluate(du, r) != 0) simple.push_back(r);
  if (simple.size() == 1) return simple.front();
  if (simple.empty() && value_at(p, 0) == 0)
    throw MathFailure(FailureKind::kDegenerateBranch,
                      "H2 fails: the origin is a multiple root of P(Y, 0)");
  throw ValidationError("P(Y, 0) has " + std::to_string(simple.size()) +
                        " simple rational roots; set branch_constant to choose the branch");
}

// ---------------------------------------------------------------- transforms

MultiPoly additive_shift(const MultiPoly& p, const MultiPoly& f0) {
  MultiPoly g = f0.vars() == p.vars() ? f0 : change_vars(f0, p.vars());
  if (g.depends_on(0))
    throw ValidationError("additive shift must not involve " + p.vars()[0]);
  if (g.is_zero()) return p;
  bool h2_before = check_h2(p);
  MultiPoly shifted =
      substitute(p, {{p.vars()[0], MultiPoly::variable(p.vars(), 0) + g}});
  if (g.constant_term() == 0 && check_h2(shifted) != h2_before)
    throw std::logic_error("additive shift changed the H2 outcome");
  return shifted;
}

std::pair<MultiPoly, IndexMap> monomial_substitution(const MultiPoly& p, std::string_view source,
                                                     std::string_view carrier) {
  require_non_embedding_var(p, source, "substitution source");
  require_non_embedding_var(p, carrier, "substitution carrier");
  std::size_t s = p.vars().index_of(source);
  std::size_t c = p.vars().index_of(carrier);
  if (s == c) throw ValidationError("monomial substitution needs distinct source and carrier");
  MultiPoly image = MultiPoly::variable(p.vars(), c) * MultiPoly::variable(p.vars(), s);
  MultiPoly out = substitute(p, {{std::string(source), image}});
  IndexMap map = IndexMap::identity(p.vars().size() - 1);
  map.matrix[c - 1][s - 1] += 1;
  return {out, map};
}

MultiPoly multiplicative_shift(const MultiPoly& p, std::string_view v, const Rational& constant) {
  require_non_embedding_var(p, v, "multiplicative shift variable");
  std::size_t vi = p.vars().index_of(v);
  const unsigned d = p.degree(std::size_t{0});
  MultiPoly raw(p.vars());
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    f[vi] += d - e[0];
    raw.add_term(f, c);
  }
  MultiPoly q = primitive_part(raw);
  if (q.leading_term().second < 0) q = -q;
  if (d >= 2 && discriminant(q, 0).is_zero())
    throw MathFailure(FailureKind::kBranchSelection,
                      "shifted polynomial has a repeated factor in Y; cannot select the branch");

  // The branch of v·f must be annihilated; checked to twice the degree.
  VarList xs = p.vars().without(0);
  const unsigned order = 2 * std::max(1u, q.total_degree());
  TruncatedSeries f = branch_expand_from(p, constant, order);
  TruncatedSeries vf = TruncatedSeries::from_poly(MultiPoly::variable(xs, vi - 1), xs, order) * f;
  if (!compose_in_y(q, vf).is_zero())
    throw MathFailure(FailureKind::kBranchSelection,
                      "multiplicative shift: reduced polynomial does not annihilate the branch");
  return q;
}

// ---------------------------------------------------------------- embedding

namespace {

// Pseudo-remainder of a by b in Y (variable 0).
MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b) {
  const unsigned db = b.degree(std::size_t{0});
  const MultiPoly lb = b.coefficients_in(0).back();
  const VarList& vars = a.vars();
  while (!a.is_zero() && a.degree(std::size_t{0}) >= db) {
    const unsigned da = a.degree(std::size_t{0});
    MultiPoly la = a.coefficients_in(0).back();
    Exponents shift(vars.size(), 0);
    shift[0] = da - db;
    a = lb * a - la * MultiPoly::monomial(vars, shift, 1) * b;
  }
  return a;
}

// A common factor of positive Y-degree, if the PRS finds one.
std::optional<MultiPoly> common_factor_in_y(MultiPoly a, MultiPoly b) {
  if (a.degree(std::size_t{0}) < b.degree(std::size_t{0})) std::swap(a, b);
  while (!b.is_zero() && b.degree(std::size_t{0}) > 0) {
    MultiPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  if (!b.is_zero()) return std::nullopt;
  return primitive_part(a);
}

Exponents min_exponents(const Exponents& a, const Exponents& b) {
  Exponents m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::min(a[i], b[i]);
  return m;
}

void reduce_fraction(MultiPoly& g, MultiPoly& h) {
  if (g.is_zero()) return;
  Exponents common = min_exponents(monomial_content(g), monomial_content(h));
  g = divide_by_monomial(g, common);
  h = divide_by_monomial(h, common);
  if (g.degree(std::size_t{0}) == 0 || h.degree(std::size_t{0}) == 0) return;
  if (!resultant(g, h, 0).is_zero()) return;
  auto factor = common_factor_in_y(g, h);
  if (!factor) return;
  auto gq = divide_exact(g, *factor);
  auto hq = divide_exact(h, *factor);
  if (!gq || !hq)
    throw MathFailure(FailureKind::kInvalidEmbedding,
                      "numerator and denominator share a factor that could not be divided out");
  g = std::move(*gq);
  h = std::move(*hq);
}

}  // namespace

EmbeddingResult safonov_embed(const MultiPoly& p, std::string_view pivot, unsigned k) {
  if (k == 0) throw ValidationError("multiplicity must be positive");
  if (!check_h1(p, pivot))
    throw MathFailure(FailureKind::kH1Failure,
                      "H1 fails for pivot '" + std::string(pivot) +
                          "': P(0, x) with " + std::string(pivot) + " = 0 is not identically zero");
  const VarList& vars = p.vars();
  std::map<std::string, MultiPoly> sub{
      {std::string(pivot), MultiPoly::variable(vars, 0) * MultiPoly::variable(vars, pivot)}};
  Exponents y2(vars.size(), 0);
  y2[0] = 2;
  MultiPoly g = MultiPoly::monomial(vars, y2, 1) * substitute(partial_derivative(p, 0), sub);
  MultiPoly h = substitute(p, sub) * Rational(k);
  reduce_fraction(g, h);
  Rational h0 = h.constant_term();
  if (h0 == 0)
    throw MathFailure(FailureKind::kInvalidEmbedding,
                      "embedding invalid: denominator vanishes at the origin after reduction");
  EmbeddingResult out;
  out.numerator = g * Rational(1 / h0);
  out.denominator = h * Rational(1 / h0);
  out.pivot = std::string(pivot);
  out.multiplicity = k;
  out.preprocessed = p;
  if (k > 1)
    out.warnings.push_back("unverified multiplicity " + std::to_string(k) +
                           ": branch separation is not performed");
  return out;
}

bool verify_embedding(const EmbeddingResult& e, const MultiPoly& preprocessed, unsigned order) {
  const VarList& vars = e.denominator.vars();
  TruncatedSeries full = rational_expand(e.numerator, e.denominator, 2 * order);
  TruncatedSeries diag = elementary_diagonal(full, vars[0], e.pivot);
  TruncatedSeries pre = branch_expand(preprocessed, order);
  if (!(diag == pre)) return false;
  if (e.source.is_zero()) return true;

  // Original branch under the index map. Exponents touched by subtracted
  // polynomials are exempt from the coefficient comparison.
  int exempt = -1;
  for (const auto& step : e.trail)
    if (step.kind == PreprocStep::Kind::kAdditiveShift)
      exempt = std::max(exempt, static_cast<int>(step.shift.total_degree()));
  const std::size_t pivot_row = vars.index_of(e.pivot);
  TruncatedSeries orig = branch_expand_from(e.source, e.source_constant, order);
  std::set<Exponents> hit;
  for (const auto& r : orig.shape().live_exponents()) {
    std::vector<std::int64_t> ri(r.begin(), r.end());
    auto t = e.map.apply(ri);
    if (t[0] != t[pivot_row]) return false;
    Exponents target;
    bool inside = true;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i] < 0) inside = false;
      target.push_back(static_cast<std::uint32_t>(std::max<std::int64_t>(t[i], 0)));
    }
    if (!inside || total_degree(target) > order) continue;
    hit.insert(target);
    if (static_cast<int>(total_degree(r)) <= exempt) continue;
    if (orig.coefficient(r) != diag.coefficient(target)) return false;
  }
  for (const auto& [t, c] : diag.terms())
    if (!hit.count(t)) return false;
  return true;
}

// ---------------------------------------------------------------- pipeline

PreprocState initial_state(const MultiPoly& p, const Rational& constant) {
  if (p.vars().size() < 2) throw ValidationError("minimal polynomial needs at least one variable");
  if (value_at(p, constant) != 0)
    throw MathFailure(FailureKind::kNoBranchThroughOrigin,
                      "Y = " + constant.get_str() + " is not a root of P(Y, 0)");
  PreprocState s;
  s.poly = p;
  s.constant = constant;
  s.map = IndexMap::identity(p.vars().size() - 1);
  return s;
}

void apply_step(PreprocState& state, const PreprocStep& step) {
  switch (step.kind) {
    case PreprocStep::Kind::kAdditiveShift: {
      MultiPoly f0 = step.shift.vars() == state.poly.vars()
                         ? step.shift
                         : change_vars(step.shift, state.poly.vars());
      state.poly = additive_shift(state.poly, f0);
      state.constant -= f0.constant_term();
      state.trail.push_back(PreprocStep::additive(f0));
      break;
    }
    case PreprocStep::Kind::kMonomialSub: {
      auto [q, m] = monomial_substitution(state.poly, step.source, step.carrier);
      state.poly = std::move(q);
      state.map = state.map.then(m);
      state.trail.push_back(step);
      break;
    }
    case PreprocStep::Kind::kMultiplicativeShift: {
      state.poly = multiplicative_shift(state.poly, step.variable, state.constant);
      state.constant = 0;
      state.map.offset[state.poly.vars().index_of(step.variable) - 1] += 1;
      state.trail.push_back(step);
      break;
    }
  }
}

namespace {

// Terms of total degree <= m, as a Y-free polynomial over the state vars.
MultiPoly truncation(const TruncatedSeries& s, const VarList& vars, unsigned m) {
  MultiPoly out(vars);
  for (const auto& [e, c] : s.terms()) {
    if (total_degree(e) > m) break;
    Exponents f(vars.size(), 0);
    std::copy(e.begin(), e.end(), f.begin() + 1);
    out.add_term(f, c);
  }
  return out;
}

}  // namespace

EmbeddingResult embed_problem(const MultiPoly& p, const Rational& constant,
                              const std::vector<PreprocStep>& steps, const EmbedOptions& options) {
  PreprocState state = initial_state(p, constant);
  for (const auto& step : steps) apply_step(state, step);
  const VarList& vars = state.poly.vars();
  if (value_at(partial_derivative(state.poly, 0), state.constant) == 0)
    throw MathFailure(FailureKind::kDegenerateBranch,
                      "H2 fails: dP/dY vanishes at the base point after preprocessing (P = " +
                          state.poly.to_string() + ")");

  std::vector<std::string> pivots;
  if (options.pivot == "auto") {
    for (std::size_t i = 1; i < vars.size(); ++i) pivots.push_back(vars[i]);
  } else {
    require_non_embedding_var(state.poly, options.pivot, "pivot");
    pivots.push_back(options.pivot);
  }

  const int bound = options.shift_search_degree;
  if (bound < 0 && state.constant != 0)
    throw MathFailure(FailureKind::kNoBranchThroughOrigin,
                      "series has constant term " + state.constant.get_str() +
                          " and the shift search is disabled");
  TruncatedSeries branch;
  if (bound > 0) branch = branch_expand_from(state.poly, state.constant, bound);

  auto finish = [&](EmbeddingResult e, const MultiPoly& f0) {
    e.trail = state.trail;
    if (!f0.is_zero()) e.trail.push_back(PreprocStep::additive(f0));
    std::size_t pivot_col = vars.index_of(e.pivot) - 1;
    e.map.matrix = state.map.matrix;
    e.map.offset = state.map.offset;
    e.map.matrix.insert(e.map.matrix.begin(), state.map.matrix[pivot_col]);
    e.map.offset.insert(e.map.offset.begin(), state.map.offset[pivot_col]);
    e.source = p;
    e.source_constant = constant;
    return e;
  };

  std::optional<EmbeddingResult> fallback;
  MultiPoly fallback_shift;
  std::optional<MultiPoly> previous;
  for (int m = 0; m <= std::max(bound, 0); ++m) {
    MultiPoly f0 = bound > 0 ? truncation(branch, vars, static_cast<unsigned>(m))
                             : MultiPoly::constant(vars, state.constant);
    if (previous && f0 == *previous) continue;
    previous = f0;
    MultiPoly shifted = additive_shift(state.poly, f0);
    for (const auto& pivot : pivots) {
      if (!check_h1(shifted, pivot)) continue;
      EmbeddingResult e = safonov_embed(shifted, pivot, options.multiplicity);
      if (combinatorial_certificate(e.denominator).certified()) return finish(std::move(e), f0);
      if (!fallback) {
        fallback = std::move(e);
        fallback_shift = f0;
      }
    }
  }
  if (fallback) {
    EmbeddingResult e = finish(std::move(*fallback), fallback_shift);
    if (options.pivot == "auto" && bound > 0)
      e.warnings.push_back("no candidate embedding passed the combinatorial certificate");
    return e;
  }
  throw MathFailure(FailureKind::kH1Failure,
                    "H1 fails: no pivot works after subtracting initial terms up to degree " +
                        std::to_string(std::max(bound, 0)));
}

}  // namespace algcoef
