#include <benchmark/benchmark.h>

#include "perfsurf/endspace.hpp"
#include "perfsurf/ordinal.hpp"

using namespace perfsurf;

namespace {

const char* const kExprs[] = {
    "scat(w,1,np)",
    "conv(cantor(p), scat(2,1,np))",
    "sum(scat(3,2,p), conv(cantor(np), sum(pt(no), scat(w^2+1,2,p))), scat(3,1,p), cantor(no))",
    "conv(sum(conv(cantor(p), scat(1,1,np)), pt(p)), sum(scat(w*2,1,no), scat(w*2,2,no)))",
};

void BM_Rank(benchmark::State& state) {
  SpaceExpr e = parseExpr(kExprs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(rank(e));
}
BENCHMARK(BM_Rank)->DenseRange(0, 3);

void BM_Canonicalize(benchmark::State& state) {
  SpaceExpr e = parseExpr(kExprs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(e));
}
BENCHMARK(BM_Canonicalize)->DenseRange(0, 3);

void BM_Fingerprint(benchmark::State& state) {
  SpaceExpr e = parseExpr(kExprs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint(e));
}
BENCHMARK(BM_Fingerprint)->DenseRange(0, 3);

void BM_ParseRender(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(toString(parseExpr(kExprs[2])));
}
BENCHMARK(BM_ParseRender);

void BM_OrdinalCompare(benchmark::State& state) {
  Ordinal a = parseOrdinal("w^(w+1)*3+w^w*2+w^5+7");
  Ordinal b = parseOrdinal("w^(w+1)*3+w^w*2+w^5+8");
  for (auto _ : state) benchmark::DoNotOptimize(a < b);
}
BENCHMARK(BM_OrdinalCompare);

}  // namespace

BENCHMARK_MAIN();
