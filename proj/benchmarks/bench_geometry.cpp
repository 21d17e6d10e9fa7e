#include <benchmark/benchmark.h>

#include "perfsurf/fractal.hpp"
#include "perfsurf/nonhopf.hpp"
#include "perfsurf/planegeom.hpp"

using namespace perfsurf;

namespace {

const QuadNum r2 = QuadNum::sqrt2();
PlanePoint pt(QuadNum x, QuadNum y) { return {std::move(x), std::move(y)}; }

// Zigzag crossing the fold strip `n` times, based at (0, sqrt2).
PLLoop zigzag(int n) {
  PLLoop loop;
  loop.vertices.push_back(pt(QuadNum(0), r2));
  for (int i = 0; i < n; ++i) {
    QuadNum y = r2 + QuadNum(i);
    loop.vertices.push_back(pt(i % 2 ? QuadNum(-1, 1) : QuadNum(1, 1), y + QuadNum::rational(1, 2)));
  }
  loop.vertices.push_back(pt(QuadNum::rational(-1, 2), r2 + QuadNum(n + 1)));
  return loop;
}

void BM_SegmentAvoidsLattice(benchmark::State& state) {
  PlanePoint a = pt(QuadNum(mpq_class(1, 3), mpq_class(2, 7)), QuadNum(mpq_class(-5, 4), mpq_class(1, 2)));
  PlanePoint b = pt(QuadNum(mpq_class(7, 5), mpq_class(-1, 3)), QuadNum(mpq_class(3, 2), mpq_class(1, 9)));
  for (auto _ : state) benchmark::DoNotOptimize(segmentAvoidsLattice(a, b));
}
BENCHMARK(BM_SegmentAvoidsLattice);

void BM_WindingNumber(benchmark::State& state) {
  PLLoop loop = zigzag(static_cast<int>(state.range(0)));
  RationalPoint c{mpq_class(1, 4), mpq_class(3, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(windingNumber(loop, c));
}
BENCHMARK(BM_WindingNumber)->Arg(4)->Arg(16)->Arg(64);

void BM_ProfileNonzero(benchmark::State& state) {
  PLLoop loop = applyF(kernelWitness().alpha);
  for (auto _ : state) benchmark::DoNotOptimize(profileNonzero(loop, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_ProfileNonzero)->Arg(10)->Arg(20)->Arg(40);

void BM_LiftLoop(benchmark::State& state) {
  PLLoop loop = zigzag(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(liftLoop(loop, 20));
}
BENCHMARK(BM_LiftLoop)->Arg(2)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FractalMember(benchmark::State& state) {
  auto kind = static_cast<FractalKind>(state.range(0));
  RationalVector p(dimension(kind), mpq_class(1, 4));
  p[1] = mpq_class(1, 13);
  for (auto _ : state) benchmark::DoNotOptimize(member(kind, p));
}
BENCHMARK(BM_FractalMember)->DenseRange(0, 2);

void BM_FractalWitness(benchmark::State& state) {
  auto kind = static_cast<FractalKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(witnessLoops(kind, 6));
}
BENCHMARK(BM_FractalWitness)->DenseRange(0, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
