#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "imp/bitstring.hpp"
#include "imp/enumeration.hpp"
#include "imp/vm.hpp"

namespace imp {

// One executed program of the canonical enumeration. Non-halting records
// carry steps == budget and an empty output.
struct RunRecord {
  std::uint64_t position = 0;
  std::uint32_t length = 0;
  bool halted = false;
  std::uint64_t steps = 0;
  Bitstring output;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct SweepOptions {
  std::uint64_t budget = 10000;
  StepCosts costs;
  // Worker threads for sweep_parallel; values < 1 mean 1.
  int workers = 1;
  // Positions per work unit handed to a thread.
  std::uint64_t chunk = 1 << 14;
};

// Receives consecutive records in increasing position order.
using RecordSink = std::function<void(std::span<const RunRecord>)>;

RunRecord execute_position(const CountTable& table, std::uint64_t position, const SweepOptions& options,
                           Program& scratch);

// Serial reference: executes positions [begin, end) one by one.
void sweep_serial(const CountTable& table, std::uint64_t begin, std::uint64_t end, const SweepOptions& options,
                  const RecordSink& sink);

// OpenMP kernel. Each round hands `workers` contiguous chunks to the thread
// pool and then delivers them to the sink in position order, so the record
// stream is identical to sweep_serial's for any worker count.
void sweep_parallel(const CountTable& table, std::uint64_t begin, std::uint64_t end, const SweepOptions& options,
                    const RecordSink& sink);

// Every program of length <= max_length. Throws OutOfRange when the space
// exceeds the 64-bit fast path.
void sweep(const CountTable& table, std::size_t max_length, const SweepOptions& options, const RecordSink& sink);

// Splits [begin, end) into `parts` contiguous, disjoint, covering ranges.
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t begin, std::uint64_t end,
                                                                     std::size_t parts);

}  // namespace imp
