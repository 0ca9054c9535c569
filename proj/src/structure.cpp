#include "algcoef/structure.hpp"

#include <utility>

namespace algcoef {

CombCertificate combinatorial_certificate(const MultiPoly& h) {
  Rational c = h.constant_term();
  if (c == 0) throw ValidationError("combinatorial certificate needs H(0) != 0");
  CombCertificate cert;
  cert.normalizer = c;
  cert.k = MultiPoly::constant(h.vars(), 1) - h * Rational(1 / c);
  cert.status = CombCertificate::Status::kCertified;
  for (const auto& [e, coeff] : cert.k.terms())
    if (coeff < 0) {
      cert.status = CombCertificate::Status::kUnknown;
      break;
    }
  return cert;
}

std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> rows) {
  if (rows.empty()) return rows;
  const std::size_t width = rows.front().size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < width && pivot_row < rows.size(); ++col) {
    // Euclid on the column below pivot_row until a single nonzero remains.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot_row; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])))
          best = r;
      if (best == rows.size()) break;
      std::swap(rows[pivot_row], rows[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
        for (std::size_t j = col; j < width; ++j) rows[r][j] -= q * rows[pivot_row][j];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (pivot_row >= rows.size() || rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0)
      for (auto& v : rows[pivot_row]) v = -v;
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
      if (q != 0)
        for (std::size_t j = col; j < width; ++j) rows[r][j] -= q * rows[pivot_row][j];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

SupportLattice support_lattice(const MultiPoly& k) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& [e, c] : k.terms()) {
    std::vector<Integer> row(e.begin(), e.end());
    rows.push_back(std::move(row));
  }
  SupportLattice out;
  out.basis_width = k.vars().size();
  out.basis = hermite_normal_form(std::move(rows));
  out.rank = out.basis.size();
  if (out.rank == out.basis_width) {
    out.index = 1;
    for (std::size_t i = 0; i < out.rank; ++i) out.index *= out.basis[i][i];
  }
  return out;
}

bool aperiodicity_check(const MultiPoly& k) { return support_lattice(k).full(); }

}  // namespace algcoef
