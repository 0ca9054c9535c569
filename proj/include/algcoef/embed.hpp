#pragma once

#include "algcoef/polycore.hpp"
#include "algcoef/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace algcoef {

/// One preprocessing transform applied to the algebraic series before it is
/// embedded.
struct PreprocStep {
  enum class Kind { kAdditiveShift, kMonomialSub, kMultiplicativeShift };
  Kind kind = Kind::kAdditiveShift;
  MultiPoly shift;      // additive: the subtracted polynomial (Y-free, over [Y, x...])
  std::string source;   // monomial: source ↦ carrier·source
  std::string carrier;
  std::string variable; // multiplicative: series ↦ variable·series

  static PreprocStep additive(MultiPoly f0);
  static PreprocStep monomial(std::string source, std::string carrier);
  static PreprocStep multiplicative(std::string variable);

  std::string describe() const;
  friend bool operator==(const PreprocStep&, const PreprocStep&) = default;
};

/// Affine map r ↦ matrix·r + offset from original exponents to the exponents
/// of a transformed series. Rows are target variables, columns original ones.
struct IndexMap {
  std::vector<std::vector<std::int64_t>> matrix;
  std::vector<std::int64_t> offset;

  static IndexMap identity(std::size_t n);
  std::size_t rows() const { return matrix.size(); }
  std::size_t cols() const { return matrix.empty() ? 0 : matrix.front().size(); }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& r) const;
  /// Linear part only; used for directions.
  std::vector<Rational> apply_linear(const std::vector<Rational>& r) const;
  /// `next` applied after this map.
  IndexMap then(const IndexMap& next) const;

  friend bool operator==(const IndexMap&, const IndexMap&) = default;
};

/// f(0) = constant branch of P over [Y, x...], together with the reindexing
/// and transforms that produced it from the input series.
struct PreprocState {
  MultiPoly poly;
  Rational constant;
  IndexMap map;
  std::vector<PreprocStep> trail;
};

struct EmbeddingResult {
  MultiPoly numerator;    // over [Y, x...]
  MultiPoly denominator;  // H(0) = 1
  std::string pivot;
  unsigned multiplicity = 1;
  std::vector<PreprocStep> trail;
  IndexMap map;  // original exponents → [Y, x...] exponents

  // What was embedded, kept so the result can be checked on its own.
  MultiPoly source;          // input minimal polynomial over [Y, x...]
  Rational source_constant;  // f(0) of the input branch
  MultiPoly preprocessed;    // annihilates the embedded series
  std::vector<std::string> warnings;
};

bool check_h2(const MultiPoly& p);
/// Throws MathFailure(h2_failure) when H2 does not hold.
bool check_h1(const MultiPoly& p, std::string_view v);

/// P(Y + f0, x). f0 must be free of Y.
MultiPoly additive_shift(const MultiPoly& p, const MultiPoly& f0);

/// P with source ↦ carrier·source, plus the map on the non-Y exponents.
std::pair<MultiPoly, IndexMap> monomial_substitution(const MultiPoly& p, std::string_view source,
                                                     std::string_view carrier);

/// Annihilator of v·f where f is the branch of P with f(0) = constant.
MultiPoly multiplicative_shift(const MultiPoly& p, std::string_view v,
                               const Rational& constant = 0);

/// Y²·P_Y / (k·P) with pivot ↦ Y·pivot, reduced, normalized to H(0) = 1.
/// Only the rational function and pivot fields are filled in.
EmbeddingResult safonov_embed(const MultiPoly& p, std::string_view pivot, unsigned k = 1);

/// Diagonal of the embedding against the preprocessed branch through order N,
/// and the original branch against it under the index map.
bool verify_embedding(const EmbeddingResult& e, const MultiPoly& preprocessed, unsigned order);

PreprocState initial_state(const MultiPoly& p, const Rational& constant);
void apply_step(PreprocState& state, const PreprocStep& step);

struct EmbedOptions {
  std::string pivot = "auto";
  unsigned multiplicity = 1;
  /// Largest truncation degree tried for the subtracted initial terms; -1
  /// disables the search.
  int shift_search_degree = 3;
};

/// Applies `steps`, then searches subtracted truncations (degree 0..bound)
/// and pivots in variable order, preferring the first certified embedding.
EmbeddingResult embed_problem(const MultiPoly& p, const Rational& constant,
                              const std::vector<PreprocStep>& steps, const EmbedOptions& options);

/// The default f(0): 0 when the origin is a simple root, else the unique
/// simple rational root of P(Y, 0). Throws ValidationError when ambiguous.
Rational default_branch_constant(const MultiPoly& p);

}  // namespace algcoef
