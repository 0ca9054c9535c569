#pragma once

#include "algcoef/embed.hpp"
#include "algcoef/polycore.hpp"
#include "algcoef/structure.hpp"

#include <optional>
#include <vector>

namespace algcoef {

/// Ray of coefficient indices, in original and embedded coordinates.
/// Coefficients are taken at n·original, i.e. at n·embedded + offset.
struct Direction {
  std::vector<Rational> original;
  std::vector<Rational> embedded;

  /// Throws ValidationError unless every entry is positive.
  static Direction from_original(std::vector<Rational> r, const IndexMap& map);
  /// Direction given directly in embedded coordinates.
  static Direction from_embedded(std::vector<Rational> r);
  /// Embedded entries scaled to sum 1.
  std::vector<Rational> canonical() const;
};

enum class Tri { kUnknown, kYes, kNo };
const char* to_string(Tri t);

struct CriticalPoint {
  std::vector<Complex> coords;  // embedded variables, Y first
  Real residual = 0;            // max |system polynomial| at coords
  Tri smooth = Tri::kUnknown;
  Tri positive = Tri::kUnknown;
  Tri minimal = Tri::kUnknown;
  /// Index maximizing |w_j ∂H/∂z_j(w)|; set by smoothness_check.
  std::size_t distinguished = 0;
  unsigned precision_bits = 0;
};

/// {H} ∪ {r₁ z_j H_j − r_j z₁ H₁ : j ≥ 2}, each scaled by a positive
/// rational to a primitive integer polynomial.
std::vector<MultiPoly> critical_system(const MultiPoly& h, const std::vector<Rational>& r);

struct SolveOptions {
  /// Starting precision; doubled on polish failure up to kMaxPrecisionBits.
  unsigned precision_bits = 0;  // 0: configured default
  /// Newton polish target on the integer system.
  double residual_tolerance = 1e-30;
  double dedupe_tolerance = 1e-20;
};

/// All isolated solutions in (C*)^D, canonically sorted. Throws
/// MathFailure(no_affine_critical_points) when there are none.
std::vector<CriticalPoint> solve_critical(const std::vector<MultiPoly>& system,
                                          const SolveOptions& options = {});

/// Sets pt.smooth and pt.distinguished. True iff some partial of H exceeds
/// 1e-15 times the largest coefficient of H in absolute value.
bool smoothness_check(const MultiPoly& h, CriticalPoint& pt);

/// The unique positive point, flagged minimal. Requires both certificates.
CriticalPoint select_minimal(const std::vector<CriticalPoint>& points, const CombCertificate& cert,
                             bool aperiodic);

/// Roots of a complex polynomial (coefficients low to high, nonzero leading
/// term) by simultaneous Aberth iteration at the current precision.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

}  // namespace algcoef
