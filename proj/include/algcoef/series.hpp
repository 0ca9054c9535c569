#pragma once

#include "algcoef/polycore.hpp"
#include "algcoef/series_kernels.hpp"

#include <map>
#include <vector>

namespace algcoef {

/// Multivariate power series truncated at total degree `order`, with exact
/// rational coefficients (stored as integer numerators over one common
/// denominator).
class TruncatedSeries {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  TruncatedSeries() = default;
  TruncatedSeries(VarList vars, unsigned order);

  /// p must be over `vars` (by name); terms above `order` are dropped.
  static TruncatedSeries from_poly(const MultiPoly& p, const VarList& vars, unsigned order);
  static TruncatedSeries constant(VarList vars, unsigned order, const Rational& c);

  const VarList& vars() const { return vars_; }
  unsigned order() const { return shape_.order(); }
  const kernels::DenseShape& shape() const { return shape_; }

  /// Throws ValidationError when |e| exceeds the truncation order.
  Rational coefficient(const Exponents& e) const;
  void set_coefficient(const Exponents& e, const Rational& c);
  /// Nonzero terms in grlex order.
  TermMap terms() const;
  bool is_zero() const;
  /// Lowest total degree carrying a nonzero coefficient; order()+1 if zero.
  unsigned valuation() const;

  /// Re-truncates (lower order) or zero-pads (higher order).
  TruncatedSeries with_order(unsigned order) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& c);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Multiplicative inverse by Newton iteration. Precondition: nonzero
  /// constant term.
  TruncatedSeries inverse() const;

  /// Builds a series from raw dense storage laid out as in `shape()`.
  static TruncatedSeries from_raw(VarList vars, unsigned order, std::vector<Integer> numerators,
                                  Integer denominator);

  // Raw storage, for the kernels and tests.
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

 private:
  void require_compatible(const TruncatedSeries& o) const;
  void normalize();

  VarList vars_;
  kernels::DenseShape shape_;
  std::vector<Integer> num_;
  Integer den_ = 1;
};

/// P(f(x), x) evaluated in truncated arithmetic; Y is variable 0 of P and the
/// remaining variables of P must match f.vars().
TruncatedSeries compose_in_y(const MultiPoly& p, const TruncatedSeries& f);

/// The unique series f with f(0) = 0 and P(f, x) = 0 mod degree N+1.
/// Y is variable 0 of P. Newton iteration with precision doubling.
TruncatedSeries branch_expand(const MultiPoly& p, unsigned order);

/// Same, for the branch with f(0) = `constant` (a simple root of P(Y, 0)).
/// When `iterates` is given, it receives the Newton iterate after each
/// doubling step.
TruncatedSeries branch_expand_from(const MultiPoly& p, const Rational& constant, unsigned order,
                                   std::vector<TruncatedSeries>* iterates = nullptr);

/// Series of G/H over the variables of H. Precondition: H(0) != 0.
TruncatedSeries rational_expand(const MultiPoly& g, const MultiPoly& h, unsigned order);

/// Keeps terms where v1 and v2 carry equal exponents and merges them into v2
/// (v1 is dropped). The result is complete through order floor(order/2).
TruncatedSeries elementary_diagonal(const TruncatedSeries& s, std::string_view v1,
                                    std::string_view v2);

/// deg_Y(P) times the total degree of P.
unsigned default_section_bound(const MultiPoly& p);

/// Bounded certificate that the origin branch of P restricted to x_j = 0 is a
/// polynomial: no terms of total degree in (bound, 2*bound].
bool section_is_polynomial(const MultiPoly& p, std::string_view var, unsigned bound);

}  // namespace algcoef
