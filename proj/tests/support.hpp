#pragma once

#include "algcoef/polycore.hpp"
#include "algcoef/series.hpp"

#include <random>
#include <string>

namespace testing_support {

using namespace algcoef;

inline MultiPoly P(const std::string& text, const VarList& vars) {
  return parse_polynomial(text, vars);
}

inline Rational Q(const std::string& s) { return Rational(s); }

/// Random polynomial with small integer coefficients and bounded total degree.
inline MultiPoly random_poly(std::mt19937_64& rng, const VarList& vars, unsigned max_deg,
                             int terms, int coeff = 5) {
  MultiPoly p(vars);
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<unsigned> d(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars.size(), 0);
    unsigned budget = d(rng);
    for (unsigned k = 0; k < budget; ++k) e[rng() % vars.size()] += 1;
    p.add_term(e, Rational(c(rng)));
  }
  return p;
}

/// Univariate coefficient list of a one-variable series.
inline std::vector<Rational> coefficients_1d(const TruncatedSeries& s) {
  std::vector<Rational> out;
  for (unsigned n = 0; n <= s.order(); ++n) out.push_back(s.coefficient({n}));
  return out;
}

}  // namespace testing_support
