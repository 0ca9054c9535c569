#include "algcoef/series_kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef ALGCOEF_HAVE_OPENMP
#include <omp.h>
#endif

namespace algcoef::kernels {

DenseShape::DenseShape(std::size_t nvars, unsigned order) : nvars_(nvars), order_(order) {
  strides_.resize(nvars);
  std::size_t s = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    strides_[i] = s;
    if (s > (std::size_t{1} << 40) / (order + 1)) throw std::length_error("series too large");
    s *= order + 1;
  }
  size_ = s;
  // Enumerate live entries in grlex order: by total degree, then lex.
  std::vector<std::pair<Exponents, std::size_t>> entries;
  Exponents e(nvars, 0);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    std::size_t rest = idx;
    unsigned deg = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
      e[i] = static_cast<std::uint32_t>(rest % (order + 1));
      rest /= order + 1;
      deg += e[i];
    }
    if (deg <= order) entries.emplace_back(e, idx);
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return GrlexLess{}(a.first, b.first); });
  live_.reserve(entries.size());
  live_exps_.reserve(entries.size());
  for (auto& [ex, idx] : entries) {
    live_.push_back(idx);
    live_exps_.push_back(std::move(ex));
  }
}

std::size_t DenseShape::index(const Exponents& e) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < nvars_; ++i) idx += e[i] * strides_[i];
  return idx;
}

Exponents DenseShape::exponents(std::size_t index) const {
  Exponents e(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    e[i] = static_cast<std::uint32_t>(index % (order_ + 1));
    index /= order_ + 1;
  }
  return e;
}

namespace {

// Sum over a <= c (componentwise) of a[a] * b[c - a]. The first variable is
// the contiguous one, so the innermost loop walks memory linearly.
void convolve_entry(const DenseShape& shape, const Integer* a, const Integer* b,
                    std::size_t c_index, const Exponents& ec, mpz_t acc,
                    std::vector<std::uint32_t>& digits) {
  mpz_set_ui(acc, 0);
  const std::size_t k = shape.nvars();
  if (k == 0) {
    mpz_mul(acc, a[0].get_mpz_t(), b[0].get_mpz_t());
    return;
  }
  digits.assign(k, 0);
  std::size_t outer = 0;  // index contribution of digits 1..k-1
  const std::uint32_t inner_max = ec[0];
  for (;;) {
    const Integer* pa = a + outer;
    const Integer* pb = b + (c_index - outer);
    for (std::uint32_t t = 0; t <= inner_max; ++t) {
      const mpz_srcptr x = pa[t].get_mpz_t();
      if (mpz_sgn(x) == 0) continue;
      const mpz_srcptr y = (pb - t)->get_mpz_t();
      if (mpz_sgn(y) == 0) continue;
      mpz_addmul(acc, x, y);
    }
    std::size_t i = 1;
    for (; i < k; ++i) {
      if (digits[i] < ec[i]) {
        ++digits[i];
        outer += shape.stride(i);
        break;
      }
      outer -= digits[i] * shape.stride(i);
      digits[i] = 0;
    }
    if (i == k) break;
  }
}

void check_sizes(const DenseShape& shape, std::size_t a, std::size_t b, std::size_t out) {
  if (a != shape.size() || b != shape.size() || out != shape.size())
    throw std::invalid_argument("dense kernel: buffer size does not match shape");
}

}  // namespace

void mul_serial(const DenseShape& shape, std::span<const Integer> a, std::span<const Integer> b,
                std::span<Integer> out) {
  check_sizes(shape, a.size(), b.size(), out.size());
  mpz_t acc;
  mpz_init(acc);
  std::vector<std::uint32_t> digits;
  const auto& live = shape.live();
  const auto& exps = shape.live_exponents();
  for (std::size_t n = 0; n < live.size(); ++n) {
    convolve_entry(shape, a.data(), b.data(), live[n], exps[n], acc, digits);
    mpz_swap(out[live[n]].get_mpz_t(), acc);
  }
  mpz_clear(acc);
}

void mul_parallel(const DenseShape& shape, std::span<const Integer> a,
                  std::span<const Integer> b, std::span<Integer> out) {
  check_sizes(shape, a.size(), b.size(), out.size());
  const auto& live = shape.live();
  const auto& exps = shape.live_exponents();
  const auto count = static_cast<std::ptrdiff_t>(live.size());
#ifdef ALGCOEF_HAVE_OPENMP
#pragma omp parallel
#endif
  {
    mpz_t acc;
    mpz_init(acc);
    std::vector<std::uint32_t> digits;
#ifdef ALGCOEF_HAVE_OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
    for (std::ptrdiff_t n = count - 1; n >= 0; --n) {
      // High-degree entries carry the most work; hand them out first.
      const auto u = static_cast<std::size_t>(n);
      convolve_entry(shape, a.data(), b.data(), live[u], exps[u], acc, digits);
      mpz_swap(out[live[u]].get_mpz_t(), acc);
    }
    mpz_clear(acc);
  }
}

bool parallel_enabled() {
#ifdef ALGCOEF_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef ALGCOEF_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void mul(const DenseShape& shape, std::span<const Integer> a, std::span<const Integer> b,
         std::span<Integer> out) {
  if (parallel_enabled() && max_threads() > 1 && shape.live().size() > 512)
    mul_parallel(shape, a, b, out);
  else
    mul_serial(shape, a, b, out);
}

}  // namespace algcoef::kernels
