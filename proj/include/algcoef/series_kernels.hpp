#pragma once

#include "algcoef/numeric.hpp"
#include "algcoef/polycore.hpp"

#include <cstddef>
#include <span>
#include <vector>

// Dense kernels behind TruncatedSeries. A series in k variables truncated at
// total degree N is stored in a (N+1)^k hypercube, mixed radix N+1 with the
// first variable fastest. Entries of total degree > N are kept at zero.
//
// Every kernel has a serial reference and an OpenMP version that must agree
// bit for bit; tests compare them and bench/ times them.
namespace algcoef::kernels {

class DenseShape {
 public:
  DenseShape() = default;
  DenseShape(std::size_t nvars, unsigned order);

  std::size_t nvars() const { return nvars_; }
  unsigned order() const { return order_; }
  std::size_t size() const { return size_; }
  std::size_t stride(std::size_t var) const { return strides_[var]; }

  std::size_t index(const Exponents& e) const;
  Exponents exponents(std::size_t index) const;
  /// Indices of every entry with total degree <= order, in grlex order.
  const std::vector<std::size_t>& live() const { return live_; }
  /// Exponent vectors aligned with live().
  const std::vector<Exponents>& live_exponents() const { return live_exps_; }

  friend bool operator==(const DenseShape& a, const DenseShape& b) {
    return a.nvars_ == b.nvars_ && a.order_ == b.order_;
  }

 private:
  std::size_t nvars_ = 0;
  unsigned order_ = 0;
  std::size_t size_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<std::size_t> live_;
  std::vector<Exponents> live_exps_;
};

/// out = a * b truncated to the shape. `out` must not alias a or b.
void mul_serial(const DenseShape& shape, std::span<const Integer> a, std::span<const Integer> b,
                std::span<Integer> out);
void mul_parallel(const DenseShape& shape, std::span<const Integer> a,
                  std::span<const Integer> b, std::span<Integer> out);

/// Chooses the OpenMP kernel when it is compiled in and the work is large
/// enough to pay for the fork.
void mul(const DenseShape& shape, std::span<const Integer> a, std::span<const Integer> b,
         std::span<Integer> out);

bool parallel_enabled();
int max_threads();

}  // namespace algcoef::kernels
