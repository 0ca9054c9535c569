#pragma once

#include "algcoef/errors.hpp"
#include "algcoef/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace algcoef {

/// Ordered, duplicate-free list of variable names. When an embedding
/// variable is present it sits at index 0.
class VarList {
 public:
  VarList() = default;
  explicit VarList(std::vector<std::string> names);
  VarList(std::initializer_list<std::string> names)
      : VarList(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws ValidationError naming the variable when absent.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  VarList without(std::size_t index) const;
  VarList with_front(const std::string& name) const;

  friend bool operator==(const VarList&, const VarList&) = default;

 private:
  std::vector<std::string> names_;
};

bool is_valid_identifier(std::string_view name);

using Exponents = std::vector<std::uint32_t>;

unsigned total_degree(const Exponents& e);

/// Graded lexicographic order: total degree first, then lexicographic in
/// declared variable order.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(VarList vars, const Rational& c);
  static MultiPoly variable(VarList vars, std::size_t index);
  static MultiPoly variable(VarList vars, std::string_view name);
  static MultiPoly monomial(VarList vars, Exponents e, const Rational& c);

  const VarList& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;
  unsigned degree(std::size_t var) const;
  unsigned degree(std::string_view var) const { return degree(vars_.index_of(var)); }
  unsigned total_degree() const;
  /// Leading term under grlex. Precondition: nonzero.
  const std::pair<const Exponents, Rational>& leading_term() const;

  /// Adds c·x^e, dropping the term if it cancels.
  void add_term(const Exponents& e, const Rational& c);

  /// Coefficients c_0..c_deg with this = sum c_i var^i; each c_i keeps the
  /// same VarList and has zero degree in var.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree(var) > 0; }

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned n) const;

  /// Expression text in the input grammar, terms in descending grlex order.
  std::string to_string() const;

 private:
  VarList vars_;
  TermMap terms_;
};

/// Parses `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := base ('^' uint)?`, `base := var | rational | '(' expr ')'`,
/// `rational := int ('/' uint)?`. A leading '-' on a term is accepted.
MultiPoly parse_polynomial(std::string_view text, const VarList& vars);

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var);
MultiPoly partial_derivative(const MultiPoly& p, std::string_view var);

/// Replaces each named variable by a polynomial over p.vars() and expands.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& assignments);

/// Re-expresses p over another variable list by name. Variables of p that are
/// absent from `target` must not occur in p.
MultiPoly change_vars(const MultiPoly& p, const VarList& target);

/// Exact division; nullopt when b does not divide a.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

/// Largest monomial dividing every term (all zeros for the zero polynomial).
Exponents monomial_content(const MultiPoly& p);
MultiPoly divide_by_monomial(const MultiPoly& p, const Exponents& m);
/// Positive rational c with p/c having coprime integer coefficients.
Rational rational_content(const MultiPoly& p);
/// p divided by its rational content and monomial content.
MultiPoly primitive_part(const MultiPoly& p);

/// Sylvester-matrix resultant with respect to `var`, via fraction-free
/// (Bareiss) elimination. Result has zero degree in `var`.
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var);
MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::string_view var);
/// (-1)^{n(n-1)/2} res(p, p') / lc(p).
MultiPoly discriminant(const MultiPoly& p, std::size_t var);

/// Coordinates: exact rationals or floating values carrying their precision.
struct Point {
  using Coord = std::variant<Rational, Real>;
  std::vector<Coord> coords;
  bool is_exact() const;
};

using Number = std::variant<Rational, Real>;

/// Exact when every coordinate is exact, otherwise evaluated at the maximal
/// coordinate precision (at least 128 bits).
Number evaluate(const MultiPoly& p, const Point& pt);
Rational evaluate(const MultiPoly& p, std::span<const Rational> pt);
Real evaluate(const MultiPoly& p, std::span<const Real> pt);
Complex evaluate(const MultiPoly& p, std::span<const Complex> pt);
/// Sum of |c|·|x^e| at pt; the natural scale for relative residuals.
Real evaluate_magnitude(const MultiPoly& p, std::span<const Complex> pt);

/// Dense univariate polynomial, coefficient i multiplies t^i.
using UniPoly = std::vector<Rational>;

/// Requires p to depend on no variable other than `var`.
UniPoly to_univariate(const MultiPoly& p, std::size_t var);
void trim(UniPoly& p);
UniPoly uni_derivative(const UniPoly& p);
/// Remainder and quotient over Q. Precondition: b nonzero.
void uni_divmod(const UniPoly& a, const UniPoly& b, UniPoly& quotient, UniPoly& remainder);
/// Monic gcd.
UniPoly uni_gcd(UniPoly a, UniPoly b);
UniPoly uni_squarefree(const UniPoly& p);
/// Rational roots (each once) by the rational root test.
std::vector<Rational> uni_rational_roots(const UniPoly& p);
Rational uni_evaluate(const UniPoly& p, const Rational& t);

}  // namespace algcoef
