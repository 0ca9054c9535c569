#pragma once

#include "algcoef/polycore.hpp"

#include <vector>

namespace algcoef {

/// H = normalizer·(1 − K). Certified means every coefficient of K is
/// nonnegative, which makes 1/H a series with nonnegative coefficients.
struct CombCertificate {
  enum class Status { kCertified, kUnknown };
  Status status = Status::kUnknown;
  MultiPoly k;  // set in both cases; only meaningful when certified
  Rational normalizer;

  bool certified() const { return status == Status::kCertified; }
};

/// Throws ValidationError when H(0) = 0.
CombCertificate combinatorial_certificate(const MultiPoly& h);

/// Lattice spanned by the support of K, in Hermite normal form.
struct SupportLattice {
  std::vector<std::vector<Integer>> basis;  // nonzero HNF rows
  std::size_t rank = 0;
  /// Index in Z^n when of full rank, 0 otherwise.
  Integer index = 0;

  bool full() const { return rank == basis_width && index == 1; }
  std::size_t basis_width = 0;
};

/// Row-style Hermite normal form of an integer matrix (zero rows dropped).
std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> rows);

SupportLattice support_lattice(const MultiPoly& k);

/// True iff the exponent vectors of K generate all of Z^n.
bool aperiodicity_check(const MultiPoly& k);

}  // namespace algcoef
