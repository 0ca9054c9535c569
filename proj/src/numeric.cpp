#include "algcoef/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ios>
#include <string>

namespace algcoef {

namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// Floating values default to the configured working precision from load time
// on, so a bare Real never falls below the 128-bit floor.
[[maybe_unused]] const bool kPrecisionInstalled = [] {
  Real::default_precision(bits_to_digits10(configured_precision_bits()));
  return true;
}();

}  // namespace

unsigned configured_precision_bits() {
  const char* env = std::getenv("ALGCOEF_PRECISION_BITS");
  if (env == nullptr || *env == '\0') return kDefaultPrecisionBits;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v <= 0) return kDefaultPrecisionBits;
  return static_cast<unsigned>(std::clamp<long>(v, 128, kMaxPrecisionBits));
}

unsigned current_precision_bits() {
  return static_cast<unsigned>(
      boost::multiprecision::detail::digits10_2_2(Real::default_precision()));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string format_real(const Real& x, int significant_digits) {
  if (x == 0) return "0";
  return x.str(significant_digits, std::ios_base::scientific);
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  using boost::multiprecision::abs;
  if (abs(o.re) >= abs(o.im)) {
    Real ratio = o.im / o.re;
    Real den = o.re + o.im * ratio;
    Real r = (re + im * ratio) / den;
    im = (im - re * ratio) / den;
    re = std::move(r);
  } else {
    Real ratio = o.re / o.im;
    Real den = o.re * ratio + o.im;
    Real r = (re * ratio + im) / den;
    im = (im * ratio - re) / den;
    re = std::move(r);
  }
  return *this;
}

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex sqrt(const Complex& z) {
  using boost::multiprecision::sqrt;
  if (z.re == 0 && z.im == 0) return {};
  Real m = abs(z);
  Real a = sqrt((m + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return {a, z.im / (2 * a)};
  Real b = z.im >= 0 ? a : Real(-a);
  return {boost::multiprecision::abs(z.im) / (2 * a), b};
}

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex log(const Complex& z) {
  return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(Real(1)) / pow(z, -n);
  Complex result(Real(1));
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace algcoef
