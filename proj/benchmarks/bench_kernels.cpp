#include <benchmark/benchmark.h>

#include <random>

#include "rcf2/catalog.hpp"
#include "rcf2/equivalence.hpp"
#include "rcf2/harness.hpp"
#include "rcf2/range_compat.hpp"
#include "rcf2/rank_geom.hpp"
#include "rcf2/reflexivity.hpp"

using namespace rcf2;

static void BM_Rank64(benchmark::State& state) {
  std::mt19937_64 rng(0);
  BitMatrix m(64, 64);
  for (std::size_t i = 0; i < 64; ++i) m.set_row(i, rng());
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank64);

static void BM_FlatRank3x3(benchmark::State& state) {
  Word m = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flat_rank(m, 3, 3));
    m = (m + 1) & 511;
  }
}
BENCHMARK(BM_FlatRank3x3);

static void BM_RcDefectType(benchmark::State& state) {
  const MatSubspace s = type_space(static_cast<int>(state.range(0)), 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rc_defect(s));
}
BENCHMARK(BM_RcDefectType)->DenseRange(1, 7);

static void BM_RcSpaceRandom3x4(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const MatSubspace s = random_subspace(rng, 3, 4, 9);
  for (auto _ : state) benchmark::DoNotOptimize(rc_space(s));
}
BENCHMARK(BM_RcSpaceRandom3x4);

static void BM_ReflexiveClosure(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const MatSubspace s = random_subspace(rng, 4, 4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reflexive_closure(s));
}
BENCHMARK(BM_ReflexiveClosure)->Arg(4)->Arg(8)->Arg(12);

static void BM_EquivalenceTypes(benchmark::State& state) {
  const MatSubspace a = type_space(4, 0, 0), b = type_space(5, 0, 0);
  std::mt19937_64 rng(3);
  const MatSubspace moved = multiply(random_invertible(rng, 3), a, random_invertible(rng, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(are_equivalent(a, moved));
    benchmark::DoNotOptimize(are_equivalent(a, b));
  }
}
BENCHMARK(BM_EquivalenceTypes);

static void BM_ClassifyType3x4(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const MatSubspace s = multiply(random_invertible(rng, 3), literal("H4").linear(), random_invertible(rng, 4));
  for (auto _ : state) benchmark::DoNotOptimize(classify_type(s));
}
BENCHMARK(BM_ClassifyType3x4);

static void BM_OrbitType6(benchmark::State& state) {
  const MatSubspace s = type_space(6, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(orbit(s).size());
}
BENCHMARK(BM_OrbitType6)->Unit(benchmark::kMillisecond);

static void BM_SubspaceEnumeration3x3(benchmark::State& state) {
  for (auto _ : state) {
    SubspaceEnumerator it(3, 3, 6);
    it.seek(100000);
    std::uint64_t count = 0;
    while (count < 10000 && it.next()) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_SubspaceEnumeration3x3);

static void BM_Class3x3Shard(benchmark::State& state) {
  SuiteOptions o;
  o.shards = 100;
  for (auto _ : state) benchmark::DoNotOptimize(verify("class-3x3", o).pass());
}
BENCHMARK(BM_Class3x3Shard)->Unit(benchmark::kMillisecond);

static void BM_UpperRankDim12(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const MatSubspace s = random_subspace(rng, 4, 4, 12);
  for (auto _ : state) benchmark::DoNotOptimize(upper_rank(s));
}
BENCHMARK(BM_UpperRankDim12);

BENCHMARK_MAIN();
