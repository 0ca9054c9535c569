#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace algcoef {

using Integer = mpz_class;
using Rational = mpq_class;

/// Variable-precision binary floating point backed by MPFR.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;
inline constexpr unsigned kMaxPrecisionBits = 2048;

/// Working precision in bits: ALGCOEF_PRECISION_BITS if set (clamped to
/// [128, 2048]), otherwise 256.
unsigned configured_precision_bits();

/// Current default precision of newly constructed Real values, in bits.
unsigned current_precision_bits();

/// Sets the default Real precision for the lifetime of the object.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

Real to_real(const Rational& q);
Real to_real(const Integer& z);
Real real_pi();

/// Scientific rendering with a fixed number of significant digits.
std::string format_real(const Real& x, int significant_digits = 30);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Rational& q) : re(to_real(q)), im(0) {}
  explicit Complex(long v) : re(v), im(0) {}

  static Complex i() { return {Real(0), Real(1)}; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return {-re, -im}; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(Complex a, const Real& s) {
  a.re *= s;
  a.im *= s;
  return a;
}
inline Complex operator*(const Real& s, Complex a) { return a * s; }

inline Real max_real(const Real& a, const Real& b) { return a < b ? b : a; }

Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Complex conj(const Complex& z);
Complex sqrt(const Complex& z);  // principal branch
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex pow(const Complex& z, long n);

}  // namespace algcoef
