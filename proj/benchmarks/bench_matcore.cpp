#include <benchmark/benchmark.h>

#include "hlp/matcore.hpp"
#include "hlp/random.hpp"

namespace {

void BM_JacobiEigen(benchmark::State& state) {
  hlp::Rng rng(1);
  const hlp::BlockProfile p{static_cast<int>(state.range(0))};
  const hlp::BlockMatrix h = hlp::random_hermitian(rng, p);
  for (auto _ : state) benchmark::DoNotOptimize(hlp::hermitian_eig(h));
}
BENCHMARK(BM_JacobiEigen)->RangeMultiplier(2)->Range(4, 64);

void BM_SchattenNorm(benchmark::State& state) {
  hlp::Rng rng(2);
  const hlp::BlockProfile p{static_cast<int>(state.range(0))};
  const hlp::BlockMatrix x = hlp::random_element(rng, p);
  const hlp::Exponent e = hlp::Exponent::rational(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hlp::schatten_norm(x, e));
}
BENCHMARK(BM_SchattenNorm)->RangeMultiplier(2)->Range(4, 64);

void BM_FracPower(benchmark::State& state) {
  hlp::Rng rng(3);
  const hlp::BlockProfile p{static_cast<int>(state.range(0))};
  const hlp::BlockMatrix rho = hlp::random_density(rng, p);
  for (auto _ : state) benchmark::DoNotOptimize(hlp::frac_power(rho, -0.25));
}
BENCHMARK(BM_FracPower)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
