#include <benchmark/benchmark.h>

#include "torictower/io.hpp"
#include "torictower/random.hpp"

using namespace torictower;

namespace {

std::vector<LatticeVector> pointed_generators(std::size_t n, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LatticeVector> gens;
  while (gens.size() < count) {
    LatticeVector v(n);
    Integer s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = static_cast<long>(rng.uniform(-4, 4));
      s += v[k];
    }
    if (s > 0) gens.push_back(v);
  }
  return gens;
}

void BM_DualCone(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto gens = pointed_generators(n, 2 * n, 7);
  for (auto _ : state) {
    const Cone c(n, gens);  // fresh cache every iteration
    benchmark::DoNotOptimize(dual_cone(c));
  }
}
BENCHMARK(BM_DualCone)->DenseRange(2, 6);

void BM_Hnf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng.uniform(-20, 20));
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_Hnf)->RangeMultiplier(2)->Range(2, 16);

void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng.uniform(-20, 20));
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->RangeMultiplier(2)->Range(2, 16);

void BM_BuildModel(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const TowerSpec s = io::random_tower(3, d, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(build_model(s));
}
BENCHMARK(BM_BuildModel)->DenseRange(2, 7);

void BM_LcCheck(benchmark::State& state) {
  const TowerSpec s = io::random_tower(2, 5, 3, 21);
  for (auto _ : state) benchmark::DoNotOptimize(lc_place_transfer_check(s, 50, 1));
}
BENCHMARK(BM_LcCheck);

}  // namespace

BENCHMARK_MAIN();
