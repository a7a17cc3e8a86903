#include <benchmark/benchmark.h>

#include "hlp/compop.hpp"
#include "hlp/random.hpp"

namespace {

// Composition operator of a -> a (+) a^T from M_n into M_{2n}.
struct Fixture {
  hlp::JordanMorphismSpec j;
  hlp::Weight w1;
  hlp::Weight w2;

  explicit Fixture(int n, hlp::Rng rng = hlp::Rng(4))
      : j(hlp::BlockProfile{n}, hlp::BlockProfile{2 * n},
          {{0, 0, 0, hlp::TileKind::H, std::nullopt}, {0, 0, n, hlp::TileKind::A, std::nullopt}}),
        w1(hlp::random_density(rng, hlp::BlockProfile{n})),
        w2(hlp::random_density(rng, hlp::BlockProfile{2 * n})) {}
};

void BM_OperatorNorm(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const hlp::SuperOperator c =
      hlp::build_composition(f.j, f.w1, f.w2, hlp::Exponent::rational(3), hlp::Exponent::rational(3, 2));
  hlp::NormOptions o;
  o.restarts = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(hlp::operator_norm(c, o));
}
BENCHMARK(BM_OperatorNorm)->Args({2, 1})->Args({2, 16})->Args({4, 1})->Args({4, 16})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Classify(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const hlp::Exponent two = hlp::Exponent::rational(2);
  const hlp::SuperOperator c = hlp::build_composition(f.j, f.w1, f.w2, two, two);
  c.matrix();
  for (auto _ : state) benchmark::DoNotOptimize(hlp::classify_characteristic_preserving(c, f.w1, f.w2, two, two));
}
BENCHMARK(BM_Classify)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
