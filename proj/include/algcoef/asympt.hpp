#pragma once

#include "algcoef/critical.hpp"
#include "algcoef/series_kernels.hpp"

#include <optional>
#include <string>
#include <vector>

namespace algcoef {

/// Complex power series in a few local variables, truncated at total degree
/// `order`, with floating coefficients. Used for the phase and amplitude
/// around a critical point.
class LocalSeries {
 public:
  LocalSeries() = default;
  LocalSeries(std::size_t nvars, unsigned order);

  static LocalSeries constant(std::size_t nvars, unsigned order, const Complex& c);
  /// c·t_var
  static LocalSeries variable(std::size_t nvars, unsigned order, std::size_t var,
                              const Complex& c = Complex(Real(1)));

  std::size_t nvars() const { return shape_.nvars(); }
  unsigned order() const { return shape_.order(); }
  const kernels::DenseShape& shape() const { return shape_; }

  const Complex& at(const Exponents& e) const { return c_[shape_.index(e)]; }
  Complex& at(const Exponents& e) { return c_[shape_.index(e)]; }
  const Complex& constant_term() const { return c_[0]; }

  LocalSeries& operator+=(const LocalSeries& o);
  LocalSeries& operator-=(const LocalSeries& o);
  LocalSeries& operator*=(const Complex& s);
  friend LocalSeries operator+(LocalSeries a, const LocalSeries& b) { return a += b; }
  friend LocalSeries operator-(LocalSeries a, const LocalSeries& b) { return a -= b; }
  friend LocalSeries operator*(LocalSeries a, const Complex& s) { return a *= s; }
  friend LocalSeries operator*(const LocalSeries& a, const LocalSeries& b);

  LocalSeries inverse() const;
  /// exp of a series with zero constant term times exp of the constant.
  LocalSeries exp() const;
  /// log of a series with nonzero constant term (principal branch at 0).
  LocalSeries log() const;
  LocalSeries derivative(std::size_t var) const;
  /// Part of total degree d.
  LocalSeries homogeneous(unsigned d) const;

 private:
  kernels::DenseShape shape_;
  std::vector<Complex> c_;
};

/// Evaluates P at series arguments.
LocalSeries compose(const MultiPoly& p, const std::vector<LocalSeries>& args);

struct PhaseData {
  std::size_t distinguished = 0;
  /// The distinguished coordinate on H = 0 as a series in the angles of the
  /// other coordinates, z_j = w_j e^{iθ_j}.
  LocalSeries param_series;
  LocalSeries phase;
  std::vector<std::vector<Complex>> hessian;  // (D-1)×(D-1)
  Complex hessian_det;
  /// Indices of the non-distinguished coordinates, in order.
  std::vector<std::size_t> angle_vars;
};

/// Requires w smooth with a nonzero distinguished partial. `order` is the
/// truncation degree for the local series (at least 4).
PhaseData phase_data(const MultiPoly& h, const CriticalPoint& w, const Direction& r,
                     unsigned order = 6);

struct AsymptoticExpansion {
  /// [z^{n·r + offset}] G/H ~ rho^n Σ_k a_k n^{-(D-1)/2-k}
  Real rho;
  std::vector<Complex> constants;  // a_0 .. a_depth
  unsigned depth = 0;
  unsigned leading_index = 0;      // first k with a_k != 0
  Rational alpha;                  // (D-1)/2 + leading_index
  Real constant;                   // Re a_{leading_index}
  Real constant_imag;              // should vanish
  std::optional<std::string> rho_exact;
  std::optional<std::string> constant_exact;
};

/// Saddle-point coefficients a_0..a_{k_max} at the selected point. The
/// amplitude carries the integer `offset` of the coefficient index. Throws
/// MathFailure(expansion_vanishes) when every a_k is below 1e-20.
AsymptoticExpansion expansion_terms(const MultiPoly& g, const MultiPoly& h, const PhaseData& pd,
                                    const CriticalPoint& w, const Direction& r, unsigned k_max,
                                    const std::vector<std::int64_t>& offset = {});

/// [x^{n·r_original}] f ~ constant · n^{-alpha} · rho^n in original indexing,
/// optionally with n = scale·n'.
struct OriginalAsymptotics {
  std::vector<Rational> direction;
  Real rho;
  Rational alpha;
  Real constant;
  std::optional<std::string> rho_exact;
  std::optional<std::string> constant_exact;
  Rational scale = 1;
};

OriginalAsymptotics translate_to_original(const AsymptoticExpansion& ax, const IndexMap& map,
                                          const Direction& r, const Rational& scale = 1);

/// Small-height exact form of x: an algebraic number of degree <= 2 raised
/// to 1/k. Returns an expression string, or nothing.
std::optional<std::string> recognize_radical(const Real& x);

/// Exact form of c when c·pi^{half_powers/2} is recognizable; the string
/// carries the matching power of pi.
std::optional<std::string> recognize_with_pi(const Real& c, int half_powers);

}  // namespace algcoef
