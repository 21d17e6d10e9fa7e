#include <benchmark/benchmark.h>

#include <set>

#include "perfsurf/covering.hpp"
#include "perfsurf/surface.hpp"

using namespace perfsurf;

namespace {

void BM_FamilyCheck(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  std::vector<SurfaceDescriptor> family;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::set<std::uint64_t> J;
    for (std::uint64_t n = 1; n <= m; ++n) {
      if (mask & (std::uint64_t{1} << (n - 1))) J.insert(n);
    }
    family.push_back(generateEpFamily(m, J));
  }
  for (auto _ : state) {
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t k = i + 1; k < family.size(); ++k) distinct += perforationEq(family[i], family[k]) == Verdict::Distinct;
    }
    benchmark::DoNotOptimize(distinct);
  }
}
BENCHMARK(BM_FamilyCheck)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CatalogDeckGroups(benchmark::State& state) {
  auto catalog = finiteGroupCatalog();
  for (auto _ : state) {
    for (const auto& entry : catalog) benchmark::DoNotOptimize(deckGroup(buildCover(entry.spec)));
  }
}
BENCHMARK(BM_CatalogDeckGroups)->Unit(benchmark::kMillisecond);

void BM_SymmetricGroupCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::string cycle = "(";
  for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
  GroupSpec spec = GroupSpec::fromPermutations(n, {parseCycles("(1 2)", n), parseCycles(cycle, n)});
  for (auto _ : state) benchmark::DoNotOptimize(deckGroup(buildCover(spec)));
}
BENCHMARK(BM_SymmetricGroupCover)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_LatticeBall(benchmark::State& state) {
  const auto R = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(buildCover(GroupSpec::fromTranslations({{1, 0}, {0, 1}}, R)));
}
BENCHMARK(BM_LatticeBall)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
