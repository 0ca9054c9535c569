#include "algcoef/series.hpp"

#include <algorithm>

namespace algcoef {

// ---------------------------------------------------------------- storage

TruncatedSeries::TruncatedSeries(VarList vars, unsigned order)
    : vars_(std::move(vars)), shape_(vars_.size(), order), num_(shape_.size()) {}

TruncatedSeries TruncatedSeries::from_raw(VarList vars, unsigned order,
                                          std::vector<Integer> numerators, Integer denominator) {
  TruncatedSeries s(std::move(vars), order);
  if (numerators.size() != s.num_.size())
    throw ValidationError("raw series storage does not match its shape");
  if (denominator <= 0) throw ValidationError("series denominator must be positive");
  s.num_ = std::move(numerators);
  s.den_ = std::move(denominator);
  s.normalize();
  return s;
}

TruncatedSeries TruncatedSeries::from_poly(const MultiPoly& p, const VarList& vars,
                                           unsigned order) {
  MultiPoly q = p.vars() == vars ? p : change_vars(p, vars);
  TruncatedSeries s(vars, order);
  Integer l = 1;
  for (const auto& [e, c] : q.terms())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [e, c] : q.terms()) {
    if (total_degree(e) > order) continue;
    s.num_[s.shape_.index(e)] = Integer(c * l);
  }
  s.den_ = l;
  s.normalize();
  return s;
}

TruncatedSeries TruncatedSeries::constant(VarList vars, unsigned order, const Rational& c) {
  TruncatedSeries s(std::move(vars), order);
  s.num_[0] = c.get_num();
  s.den_ = c.get_den();
  s.normalize();
  return s;
}

Rational TruncatedSeries::coefficient(const Exponents& e) const {
  if (e.size() != vars_.size()) throw ValidationError("exponent length mismatch");
  if (total_degree(e) > order())
    throw ValidationError("coefficient requested beyond truncation order " +
                          std::to_string(order()));
  Rational r(num_[shape_.index(e)], den_);
  r.canonicalize();
  return r;
}

void TruncatedSeries::set_coefficient(const Exponents& e, const Rational& c) {
  if (e.size() != vars_.size()) throw ValidationError("exponent length mismatch");
  if (total_degree(e) > order()) throw ValidationError("exponent beyond truncation order");
  Integer l;
  mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), c.get_den_mpz_t());
  if (l != den_) {
    Integer f = l / den_;
    for (auto& n : num_) n *= f;
    den_ = l;
  }
  num_[shape_.index(e)] = Integer(c * den_);
  normalize();
}

TruncatedSeries::TermMap TruncatedSeries::terms() const {
  TermMap out;
  const auto& live = shape_.live();
  for (std::size_t n = 0; n < live.size(); ++n) {
    const Integer& v = num_[live[n]];
    if (v == 0) continue;
    Rational r(v, den_);
    r.canonicalize();
    out.emplace(shape_.live_exponents()[n], std::move(r));
  }
  return out;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& v) { return v == 0; });
}

unsigned TruncatedSeries::valuation() const {
  const auto& live = shape_.live();
  for (std::size_t n = 0; n < live.size(); ++n)
    if (num_[live[n]] != 0) return total_degree(shape_.live_exponents()[n]);
  return order() + 1;
}

TruncatedSeries TruncatedSeries::with_order(unsigned order) const {
  if (order == this->order()) return *this;
  TruncatedSeries out(vars_, order);
  const kernels::DenseShape& small = order < this->order() ? out.shape_ : shape_;
  for (const auto& e : small.live_exponents())
    out.num_[out.shape_.index(e)] = num_[shape_.index(e)];
  out.den_ = den_;
  out.normalize();
  return out;
}

void TruncatedSeries::require_compatible(const TruncatedSeries& o) const {
  if (!(vars_ == o.vars_)) throw ValidationError("series over different variables");
  if (order() != o.order()) throw ValidationError("series truncated at different orders");
}

void TruncatedSeries::normalize() {
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& n : num_) {
    if (n == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& n : num_)
    if (n != 0) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
  den_ /= g;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_compatible(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
    Integer fa = l / den_, fb = l / o.den_;
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * fa + o.num_[i] * fb;
    den_ = l;
  }
  normalize();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_compatible(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] -= o.num_[i];
  } else {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
    Integer fa = l / den_, fb = l / o.den_;
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * fa - o.num_[i] * fb;
    den_ = l;
  }
  normalize();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  if (c == 0) {
    for (auto& n : num_) n = 0;
    den_ = 1;
    return *this;
  }
  for (auto& n : num_)
    if (n != 0) n *= c.get_num();
  den_ *= c.get_den();
  if (den_ < 0) {
    den_ = -den_;
    for (auto& n : num_) n = -n;
  }
  normalize();
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.require_compatible(b);
  TruncatedSeries out(a.vars_, a.order());
  kernels::mul(a.shape_, a.num_, b.num_, out.num_);
  out.den_ = a.den_ * b.den_;
  out.normalize();
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.vars_ == b.vars_ && a.order() == b.order() && a.den_ == b.den_ && a.num_ == b.num_;
}

TruncatedSeries TruncatedSeries::inverse() const {
  const Integer& c0 = num_[0];
  if (c0 == 0) throw ValidationError("series inverse needs a nonzero constant term");
  const unsigned n = order();
  Rational inv0(den_, c0);
  inv0.canonicalize();
  TruncatedSeries inv = constant(vars_, 0, inv0);
  unsigned prec = 1;
  while (prec <= n) {
    unsigned next = std::min(2 * prec, n + 1);
    unsigned o = next - 1;
    TruncatedSeries b = with_order(o);
    TruncatedSeries i = inv.with_order(o);
    TruncatedSeries err = constant(vars_, o, 1) - b * i;
    inv = i + i * err;
    prec = next;
  }
  return inv.with_order(n);
}

// ---------------------------------------------------------------- branches

namespace {

VarList series_vars(const MultiPoly& p) {
  if (p.vars().size() < 2) throw ValidationError("polynomial needs Y plus at least one variable");
  return p.vars().without(0);
}

}  // namespace

TruncatedSeries compose_in_y(const MultiPoly& p, const TruncatedSeries& f) {
  auto coeffs = p.coefficients_in(0);
  const VarList& vars = f.vars();
  TruncatedSeries acc = TruncatedSeries::from_poly(coeffs.back(), vars, f.order());
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc = acc * f;
    acc += TruncatedSeries::from_poly(coeffs[i], vars, f.order());
  }
  return acc;
}

TruncatedSeries branch_expand_from(const MultiPoly& p, const Rational& constant, unsigned order,
                                   std::vector<TruncatedSeries>* iterates) {
  VarList vars = series_vars(p);
  std::vector<Rational> origin(p.vars().size(), Rational(0));
  origin[0] = constant;
  if (evaluate(p, std::span<const Rational>(origin)) != 0) {
    if (constant == 0) throw MathFailure(FailureKind::kNoBranchThroughOrigin, "no branch through origin: P(0,0) != 0");
    throw MathFailure(FailureKind::kNoBranchThroughOrigin,
                      "Y = " + constant.get_str() + " is not a root of P(Y, 0)");
  }
  MultiPoly py = partial_derivative(p, 0);
  if (evaluate(py, std::span<const Rational>(origin)) == 0)
    throw MathFailure(FailureKind::kDegenerateBranch,
                      "multiple/degenerate branch: dP/dY vanishes at the base point (H2 fails)");

  TruncatedSeries f = TruncatedSeries::constant(vars, order, constant);
  unsigned prec = 1;  // f is exact through degree prec-1
  while (prec <= order) {
    unsigned next = std::min(2 * prec, order + 1);
    unsigned o = next - 1;
    TruncatedSeries fo = f.with_order(o);
    TruncatedSeries residual = compose_in_y(p, fo);             // valuation >= prec
    TruncatedSeries slope = compose_in_y(py, fo.with_order(o - prec));
    TruncatedSeries step = residual * slope.inverse().with_order(o);
    f = (fo - step).with_order(order);
    prec = next;
    if (iterates) iterates->push_back(f);
  }
  return f;
}

TruncatedSeries branch_expand(const MultiPoly& p, unsigned order) {
  return branch_expand_from(p, Rational(0), order);
}

TruncatedSeries rational_expand(const MultiPoly& g, const MultiPoly& h, unsigned order) {
  const VarList& vars = h.vars();
  MultiPoly gg = g.vars() == vars ? g : change_vars(g, vars);
  Rational h0 = h.constant_term();
  if (h0 == 0) throw ValidationError("rational_expand: denominator vanishes at the origin");
  kernels::DenseShape shape(vars.size(), order);
  std::vector<Rational> q(shape.size());
  for (const auto& [e, c] : gg.terms())
    if (total_degree(e) <= order) q[shape.index(e)] = c;
  std::vector<std::pair<Exponents, Rational>> tail;
  for (const auto& [e, c] : h.terms())
    if (total_degree(e) > 0) tail.emplace_back(e, c);
  const auto& live = shape.live();
  const auto& exps = shape.live_exponents();
  Rational inv_h0 = 1 / h0;
  for (std::size_t n = 0; n < live.size(); ++n) {
    const Exponents& ec = exps[n];
    Rational& slot = q[live[n]];
    for (const auto& [eh, ch] : tail) {
      bool fits = true;
      for (std::size_t i = 0; i < ec.size(); ++i)
        if (eh[i] > ec[i]) {
          fits = false;
          break;
        }
      if (fits) slot -= ch * q[live[n] - shape.index(eh)];
    }
    slot *= inv_h0;
  }
  Integer l = 1;
  for (std::size_t idx : live) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q[idx].get_den_mpz_t());
  std::vector<Integer> nums(shape.size());
  for (std::size_t idx : live) nums[idx] = Integer(q[idx] * l);
  return TruncatedSeries::from_raw(vars, order, std::move(nums), l);
}

TruncatedSeries elementary_diagonal(const TruncatedSeries& s, std::string_view v1,
                                    std::string_view v2) {
  std::size_t i1 = s.vars().index_of(v1);
  std::size_t i2 = s.vars().index_of(v2);
  if (i1 == i2) throw ValidationError("elementary diagonal needs two distinct variables");
  VarList vars = s.vars().without(i1);
  unsigned order = s.order() / 2;
  kernels::DenseShape out_shape(vars.size(), order);
  std::vector<Integer> nums(out_shape.size());
  Exponents f(vars.size());
  const auto& exps = s.shape().live_exponents();
  const auto& live = s.shape().live();
  for (std::size_t n = 0; n < live.size(); ++n) {
    const Exponents& e = exps[n];
    if (e[i1] != e[i2]) continue;
    std::size_t k = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != i1) f[k++] = e[i];
    if (total_degree(f) > order) continue;
    nums[out_shape.index(f)] = s.numerators()[live[n]];
  }
  return TruncatedSeries::from_raw(std::move(vars), order, std::move(nums), s.denominator());
}

unsigned default_section_bound(const MultiPoly& p) {
  return std::max(1u, p.degree(std::size_t{0}) * p.total_degree());
}

bool section_is_polynomial(const MultiPoly& p, std::string_view var, unsigned bound) {
  std::size_t j = p.vars().index_of(var);
  if (j == 0) throw ValidationError("section variable must not be Y");
  MultiPoly restricted = substitute(p, {{std::string(var), MultiPoly(p.vars())}});
  TruncatedSeries s = branch_expand(restricted, 2 * bound);
  for (const auto& [e, c] : s.terms()) {
    unsigned d = total_degree(e);
    if (d > bound && d <= 2 * bound) return false;
  }
  return true;
}

}  // namespace algcoef
