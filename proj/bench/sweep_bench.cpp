// Serial reference sweep against the OpenMP kernel on the same position range.

#include <benchmark/benchmark.h>

#include "imp/analysis.hpp"
#include "imp/sweep.hpp"

namespace {

void fold_range(benchmark::State& state, bool parallel) {
  const imp::CountTable& table = imp::CountTable::shared();
  const auto max_length = static_cast<std::size_t>(state.range(0));
  const std::uint64_t end = table.cumulative_u64(max_length);
  imp::SweepOptions options;
  options.workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    imp::Census census;
    auto sink = [&](std::span<const imp::RunRecord> b) { census.add(b); };
    if (parallel) {
      imp::sweep_parallel(table, 0, end, options, sink);
    } else {
      imp::sweep_serial(table, 0, end, options, sink);
    }
    benchmark::DoNotOptimize(census.total_halting());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * end));
}

void BM_SweepSerial(benchmark::State& state) { fold_range(state, false); }
void BM_SweepParallel(benchmark::State& state) { fold_range(state, true); }

}  // namespace

BENCHMARK(BM_SweepSerial)->Args({6, 1})->Args({7, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)
    ->ArgsProduct({{6, 7}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
