#include "holosym/geometry.hpp"
#include "holosym/modular.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace holosym;

namespace {

const Spacetime &spacetime(int n) {
  static const Spacetime s2(MetricSpec::parse(2, "u^2*x1^2 - 2*u*x1*x2 + x1^3*x2 + u^3*x2^2"));
  static const Spacetime s3(MetricSpec::parse(3, "u^2*x1^2 - 2*u*x1*x2 + x1^3*x3 + u^3*x2^2 + x3^4"));
  return n == 2 ? s2 : s3;
}

ModMatrix random_mod_matrix(std::size_t rows, std::size_t cols, std::uint64_t p) {
  std::mt19937_64 rng(7);
  ModMatrix m(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      // About one entry in four is nonzero, as in the constraint systems.
      m(r, c) = rng() % 4 == 0 ? rng() % p : 0;
    }
  }
  return m;
}

void BM_CovariantDerivativeParallel(benchmark::State &state) {
  const Spacetime &st = spacetime(static_cast<int>(state.range(0)));
  const PolyTensor d1 = st.covariant_derivative(st.curvature().frame);
  for (auto _ : state) {
    benchmark::DoNotOptimize(st.covariant_derivative(d1));
  }
}

void BM_CovariantDerivativeSerial(benchmark::State &state) {
  const Spacetime &st = spacetime(static_cast<int>(state.range(0)));
  const PolyTensor d1 = st.covariant_derivative(st.curvature().frame);
  for (auto _ : state) {
    benchmark::DoNotOptimize(st.covariant_derivative_serial(d1));
  }
}

void BM_RrefModParallel(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModMatrix base = random_mod_matrix(n, n + n / 2, modular_prime(0));
  for (auto _ : state) {
    ModMatrix m = base;
    benchmark::DoNotOptimize(rref_mod(m));
  }
}

void BM_RrefModSerial(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ModMatrix base = random_mod_matrix(n, n + n / 2, modular_prime(0));
  for (auto _ : state) {
    ModMatrix m = base;
    benchmark::DoNotOptimize(rref_mod_serial(m));
  }
}

} // namespace

BENCHMARK(BM_CovariantDerivativeParallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CovariantDerivativeSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefModParallel)->Arg(128)->Arg(384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrefModSerial)->Arg(128)->Arg(384)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
