// Serial against OpenMP dense series multiplication, at the shapes the
// coefficient oracle uses (bivariate to order ~150, trivariate to ~40).

#include "algcoef/series.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace algcoef;

struct Operands {
  kernels::DenseShape shape;
  std::vector<Integer> a, b;
};

Operands make_operands(std::size_t nvars, unsigned order) {
  Operands o{kernels::DenseShape(nvars, order), {}, {}};
  o.a.resize(o.shape.size());
  o.b.resize(o.shape.size());
  std::mt19937_64 rng(nvars * 1000 + order);
  // Coefficients of a few dozen digits, like those of the oracle series.
  for (std::size_t i : o.shape.live()) {
    o.a[i] = Integer(std::to_string(rng()) + std::to_string(rng()));
    o.b[i] = Integer(std::to_string(rng()) + std::to_string(rng()));
  }
  return o;
}

template <auto Kernel>
void bm_mul(benchmark::State& state) {
  Operands o = make_operands(static_cast<std::size_t>(state.range(0)),
                             static_cast<unsigned>(state.range(1)));
  std::vector<Integer> out(o.shape.size());
  for (auto _ : state) {
    Kernel(o.shape, o.a, o.b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["terms"] = static_cast<double>(o.shape.live().size());
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({1, 2000})->Args({2, 60})->Args({2, 100})->Args({2, 150})->Args({3, 25})->Args({3, 40});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(bm_mul<kernels::mul_serial>)->Name("mul_serial")->Apply(shapes);
BENCHMARK(bm_mul<kernels::mul_parallel>)->Name("mul_parallel")->Apply(shapes);

BENCHMARK_MAIN();
