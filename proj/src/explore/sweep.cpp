#include "imp/sweep.hpp"

#include <algorithm>

#include <omp.h>

namespace imp {

RunRecord execute_position(const CountTable& table, std::uint64_t position, const SweepOptions& options,
                           Program& scratch) {
  unrank_canonical_into(table, position, scratch);
  RunOptions run_options;
  run_options.costs = options.costs;
  RunResult r = run(scratch, options.budget, run_options);
  RunRecord rec;
  rec.position = position;
  rec.length = static_cast<std::uint32_t>(program_length(scratch));
  rec.halted = r.halted;
  rec.steps = r.steps;
  if (r.halted) rec.output = output(r.store);
  return rec;
}

void sweep_serial(const CountTable& table, std::uint64_t begin, std::uint64_t end, const SweepOptions& options,
                  const RecordSink& sink) {
  Program scratch;
  for (std::uint64_t k = begin; k < end; ++k) {
    const RunRecord rec = execute_position(table, k, options, scratch);
    sink(std::span<const RunRecord>(&rec, 1));
  }
}

void sweep_parallel(const CountTable& table, std::uint64_t begin, std::uint64_t end, const SweepOptions& options,
                    const RecordSink& sink) {
  const int workers = std::max(1, options.workers);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk);
  std::vector<std::vector<RunRecord>> buffers(static_cast<std::size_t>(workers));

  for (std::uint64_t round = begin; round < end;) {
    const std::uint64_t span = std::min<std::uint64_t>(end - round, chunk * static_cast<std::uint64_t>(workers));
    const auto units = static_cast<int>((span + chunk - 1) / chunk);
    const auto ranges = partition_range(round, round + span, static_cast<std::size_t>(units));

#pragma omp parallel for schedule(static, 1) num_threads(workers)
    for (int u = 0; u < units; ++u) {
      const auto [lo, hi] = ranges[static_cast<std::size_t>(u)];
      auto& buf = buffers[static_cast<std::size_t>(u)];
      buf.clear();
      buf.reserve(hi - lo);
      Program scratch;
      for (std::uint64_t k = lo; k < hi; ++k) buf.push_back(execute_position(table, k, options, scratch));
    }

    for (int u = 0; u < units; ++u) sink(buffers[static_cast<std::size_t>(u)]);
    round += span;
  }
}

void sweep(const CountTable& table, std::size_t max_length, const SweepOptions& options, const RecordSink& sink) {
  if (options.budget == 0) throw std::invalid_argument("step budget must be at least 1");
  if (max_length > table.word_limit()) {
    throw OutOfRange("sweeps are limited to lengths whose program counts fit in 64 bits");
  }
  const std::uint64_t end = table.cumulative_u64(max_length);
  sweep_parallel(table, 0, end, options, sink);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t begin, std::uint64_t end,
                                                                     std::size_t parts) {
  if (parts == 0) throw std::invalid_argument("at least one part is required");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const std::uint64_t total = end > begin ? end - begin : 0;
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t lo = begin;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::uint64_t hi = lo + base + (i < extra ? 1 : 0);
    out.emplace_back(lo, hi);
    lo = hi;
  }
  return out;
}

}  // namespace imp
