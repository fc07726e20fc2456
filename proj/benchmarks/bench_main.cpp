#include <benchmark/benchmark.h>

#include "tcs/binary_arith.hpp"
#include "tcs/nonorient.hpp"
#include "tcs/orientable.hpp"
#include "tcs/smith.hpp"
#include "tcs/zcl.hpp"

using namespace tcs;

namespace {

// Tridiagonal integer matrix with growing entries; enough fill to exercise pivoting.
SparseMatrix bandMatrix(std::size_t n) {
  SparseMatrix a{n, n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    a.add(i, i, Integer(static_cast<long>(2 * i + 3)));
    if (i + 1 < n) a.add(i, i + 1, Integer(static_cast<long>(i % 5 + 1)));
    if (i > 0) a.add(i, i - 1, Integer(-static_cast<long>(i % 3 + 2)));
  }
  return a;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const SparseMatrix a = bandMatrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smithNormalForm(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(16)->Arg(32)->Arg(64);

void BM_ParityDP(benchmark::State& state) {
  const DComplexSpec spec = DComplexSpec::fromR(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(parityCertificateDP(spec));
}
BENCHMARK(BM_ParityDP)->DenseRange(1, 6);

void BM_MDefect(benchmark::State& state) {
  for (auto _ : state)
    for (std::uint64_t n = 1; n <= 1024; ++n) benchmark::DoNotOptimize(mDefect(n, 17));
}
BENCHMARK(BM_MDefect);

void BM_ZclSearch(benchmark::State& state) {
  const TensorPowerRing ring(GradedRingSpec::projective(static_cast<int>(state.range(0))), 3);
  const auto pool = defaultPool(ring);
  for (auto _ : state) benchmark::DoNotOptimize(searchZclLower(ring, pool, ring.topDegree(), 2'000'000));
}
BENCHMARK(BM_ZclSearch)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_OrientableObstruction(benchmark::State& state) {
  const FundamentalClassSpec f{GroupSpec::parse("Z_3 x Z_3"), 5, ChainElement::parse("[0,5]+[5,0]")};
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(obstructionChain(f, s));
}
BENCHMARK(BM_OrientableObstruction)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

void BM_DecideProduct(benchmark::State& state) {
  const FundamentalClassSpec f{GroupSpec::parse("Z_3 x Z_3"), 5, ChainElement::parse("[0,5]+[5,0]")};
  for (auto _ : state) benchmark::DoNotOptimize(decideOrientable(f, 3));
}
BENCHMARK(BM_DecideProduct)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
