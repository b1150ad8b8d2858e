#include <benchmark/benchmark.h>

#include "bott/census.hpp"
#include "bott/fixtures.hpp"
#include "bott/isomorphism.hpp"
#include "bott/moves.hpp"
#include "bott/ring.hpp"

using namespace bott;

namespace {

BottMatrix dense(int n) {
  std::vector<std::vector<Integer>> cols;
  for (int j = 2; j <= n; ++j) {
    std::vector<Integer> col;
    for (int i = 1; i < j; ++i) col.emplace_back((i * 7 + j * 3) % 5 - 2);
    cols.push_back(std::move(col));
  }
  return BottMatrix::from_columns(cols);
}

void BM_TopProduct(benchmark::State& state) {
  auto ring = Ring::make(dense(static_cast<int>(state.range(0))));
  RingElement sum = ring->zero();
  for (int i = 1; i <= ring->n(); ++i) sum += ring->x(i);
  for (auto _ : state) benchmark::DoNotOptimize(power(sum, static_cast<unsigned>(ring->n())));
}
BENCHMARK(BM_TopProduct)->Arg(4)->Arg(6)->Arg(8);

void BM_DegreeFourSquare(benchmark::State& state) {
  const auto m = dense(static_cast<int>(state.range(0)));
  DegreeTwoClass z(m.n());
  for (int i = 1; i <= m.n(); ++i) z[i] = i % 3 - 1;
  for (auto _ : state) benchmark::DoNotOptimize(square(m, z));
}
BENCHMARK(BM_DegreeFourSquare)->Arg(4)->Arg(8);

void BM_IsoCheck(benchmark::State& state) {
  const auto phi = paper_automorphisms(fixtures::m_star()).front();
  for (auto _ : state) benchmark::DoNotOptimize(iso_check(phi));
}
BENCHMARK(BM_IsoCheck);

void BM_BoundedSearch(benchmark::State& state) {
  const auto a = BottMatrix::from_columns({{1}, {0, 1}});
  const auto b = BottMatrix::from_columns({{-1}, {-1, 1}});
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bounded_search(a, b, bound));
}
BENCHMARK(BM_BoundedSearch)->Arg(2)->Arg(4);

void BM_ExhaustiveSearch(benchmark::State& state) {
  const auto a = fixtures::m_star();
  DegreeTwoClass u(4);
  u[1] = 3;
  const auto b = bundle_change(a, 2, u).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(a, b));
}
BENCHMARK(BM_ExhaustiveSearch);

void BM_Census(benchmark::State& state) {
  CensusConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.entry_bound = 1;
  for (auto _ : state) benchmark::DoNotOptimize(classify(cfg));
}
BENCHMARK(BM_Census)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
