#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "imp/bigint.hpp"
#include "imp/bitstring.hpp"
#include "imp/program.hpp"

namespace imp {

// Sparse register file. Registers not present hold 0; zero values are never
// stored, so two stores are equal iff they agree on every register.
class Store {
 public:
  using Entry = std::pair<BigInt, BigInt>;

  const BigInt& get(const BigInt& reg) const;
  void set(const BigInt& reg, BigInt value);

  // Nonzero registers in ascending index order.
  const std::vector<Entry>& entries() const { return entries_; }
  bool all_zero() const { return entries_.empty(); }

  friend bool operator==(const Store&, const Store&) = default;

 private:
  std::vector<Entry> entries_;
};

// Concatenation of nat_to_string over registers in ascending index order.
Bitstring output(const Store& store);

// Cost of one semantic transition. A statement-level transition (assignment
// commit, skip elimination inside a sequence, branch selection, loop guard)
// costs `statement`, plus `operator_node` for every +, -, *, =, <, not, or,
// and node evaluated and `leaf` for every numeral, register, true or false
// read while evaluating its expression.
struct StepCosts {
  std::uint32_t statement = 1;
  std::uint32_t operator_node = 1;
  std::uint32_t leaf = 0;

  friend bool operator==(const StepCosts&, const StepCosts&) = default;
};

struct RunOptions {
  StepCosts costs;
  // Stop early when a while loop is re-entered with the same store as on
  // its previous entry. The result is identical to running out the budget.
  bool loop_check = true;
};

struct RunResult {
  bool halted = false;
  std::uint64_t steps = 0;
  Store store;
};

// Runs p from the all-zero store for at most `budget` steps. A transition
// that would overshoot the budget is not taken; the run then reports
// halted=false and steps=budget. Throws std::invalid_argument if budget is 0.
RunResult run(const Program& p, std::uint64_t budget, const RunOptions& options = {});

enum class Verdict { Halts, Diverges, Unknown };

struct DivergenceReport {
  Verdict verdict = Verdict::Unknown;
  // Steps to termination under `costs`; meaningful only for Halts.
  std::uint64_t steps = 0;
  Store store;
};

// Exact oracle for small programs: rewrites configurations with the
// small-step rules and memoizes every (residual program, store) pair.
// Reports Diverges on a repeated configuration and Unknown once more than
// `state_cap` configurations have been stored.
DivergenceReport detect_divergence(const Program& p, std::size_t state_cap,
                                   const StepCosts& costs = {});

}  // namespace imp
