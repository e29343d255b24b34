// Serial reference kernels against their OpenMP counterparts.
//
//   ./fareycorr_bench --benchmark_filter=PairCount
//   OMP_NUM_THREADS=8 ./fareycorr_bench

#include <benchmark/benchmark.h>

#include <map>

#include <omp.h>

#include "fareycorr/correlation.hpp"
#include "fareycorr/farey.hpp"
#include "fareycorr/theory.hpp"

using namespace fareycorr;

namespace {

const std::vector<farey::Fraction>& points_for(std::int64_t Q) {
  static std::map<std::int64_t, std::vector<farey::Fraction>> cache;
  auto it = cache.find(Q);
  if (it == cache.end()) {
    it = cache.emplace(Q, farey::materialize({Q, farey::CoprimeTo{2}, std::nullopt},
                                             correlation::kDefaultPointCap)).first;
  }
  return it->second;
}

void BM_PairCountSerial(benchmark::State& state) {
  const auto& pts = points_for(state.range(0));
  const correlation::PairCounter counter(pts, pts.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter.count_serial(Rational(3)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}

void BM_PairCountParallel(benchmark::State& state) {
  const auto& pts = points_for(state.range(0));
  const correlation::PairCounter counter(pts, pts.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter.count(Rational(3)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_Streaming(benchmark::State& state) {
  const farey::FareySpec spec{state.range(0), farey::CoprimeTo{2}, std::nullopt};
  const std::vector<Rational> grid{Rational(1), Rational(2), Rational(3)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(correlation::empirical_G_streaming(spec, grid));
  }
}

std::vector<double> theory_grid(std::int64_t n) {
  std::vector<double> g;
  for (std::int64_t k = 1; k <= n; ++k) g.push_back(0.01 * static_cast<double>(k));
  return g;
}

void BM_TheoryGridSerial(benchmark::State& state) {
  const auto grid = theory_grid(state.range(0));
  const theory::TheoryParams p{3, theory::Variant::Coprime, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(theory::evaluate_grid_serial(p, grid));
  }
}

void BM_TheoryGridParallel(benchmark::State& state) {
  const auto grid = theory_grid(state.range(0));
  const theory::TheoryParams p{3, theory::Variant::Coprime, false};
  for (auto _ : state) {
    benchmark::DoNotOptimize(theory::evaluate_grid(p, grid));
  }
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_PairCountSerial)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairCountParallel)->Arg(1000)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Streaming)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoryGridSerial)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoryGridParallel)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
