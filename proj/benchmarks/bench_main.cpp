#include <benchmark/benchmark.h>

#include <gpmap/certify.hpp>
#include <gpmap/dynamics.hpp>
#include <gpmap/scan.hpp>

using namespace gpmap;

static void BM_Step(benchmark::State& st) {
  const MapSpec spec = MapSpec::lozi(0.2, 1.5);
  State s = State::at(0.1, 0.05);
  for (auto _ : st) {
    s = step(spec, s);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Step);

static void BM_Orbit(benchmark::State& st) {
  const MapSpec spec = MapSpec::belykh_periodic(0.8, 0.6);
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(iterate_orbit(spec, State::at(-0.9, 0.01), n));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Orbit)->Arg(10000)->Arg(1000000);

static void BM_Lyapunov(benchmark::State& st) {
  const MapSpec spec = MapSpec::lozi(0.2, 1.5);
  const auto R = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(lyapunov(spec, State::at(0.1, 0.05), 100000, 1000, R));
  st.SetItemsProcessed(st.iterations() * 100000);
}
BENCHMARK(BM_Lyapunov)->Arg(1)->Arg(10);

static void BM_LoziTrap(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lozi_trap(0.2, 1.5));
}
BENCHMARK(BM_LoziTrap)->Unit(benchmark::kMillisecond);

static void BM_Scan(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Axis lam{"lambda", 0.0, 0.5, n}, a{"a", 1.0, 2.5, n};
  ScanOptions opt;
  opt.threads = static_cast<unsigned>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(grid_scan(Classifier::Lozi, lam, a, opt));
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}
BENCHMARK(BM_Scan)->Args({100, 1})->Args({500, 1})->Args({500, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
