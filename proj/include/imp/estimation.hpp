#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "imp/bigint.hpp"
#include "imp/enumeration.hpp"
#include "imp/vm.hpp"

namespace imp {

// Decision error epsilon, precision lambda and confidence delta of the
// sampling-based halting threshold. Requires 0 < lambda < epsilon < 1 and
// 0 < delta < 1; the constructor throws std::domain_error otherwise.
struct EstimationParams {
  Rational epsilon;
  Rational lambda;
  Rational delta;

  EstimationParams(Rational eps, Rational lam, Rational del);
};

// Smallest N with N >= ln(1/delta) / (2 lambda^2). Evaluated with 100-digit
// arithmetic and certified against a bracketing interval; throws
// std::domain_error for arguments outside (0, 1).
std::uint64_t sample_size(const Rational& lambda, const Rational& delta);

// exp(-2 N lambda^2): the confidence level reachable with a sample of N.
double confidence_from_sample(std::uint64_t n, const Rational& lambda);

// Fraction of runtimes <= t. Throws std::invalid_argument on an empty sample.
Rational ecdf(std::span<const std::uint64_t> runtimes, std::uint64_t t);

struct Threshold {
  // Largest sampled runtime: the cut-off T.
  std::uint64_t max_runtime;
  // Order statistic at rank ceil((1 - epsilon) N).
  std::uint64_t quantile;
};

// Throws std::invalid_argument on an empty sample.
Threshold threshold_from_runtimes(std::span<const std::uint64_t> runtimes, const Rational& epsilon);

// Seedable generator used for all sampling: SplitMix64 for deriving
// independent substream seeds, mt19937_64 for the streams themselves. Both
// algorithms are fully specified, so draws are reproducible across platforms.
std::uint64_t splitmix64(std::uint64_t& state);
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

// Uniform integer in [0, bound) by rejection over the smallest covering
// power of two. Throws std::invalid_argument if bound <= 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound);

struct SampleEntry {
  std::uint64_t position;
  std::uint32_t length;
  std::uint64_t steps;
};

struct HaltingSample {
  EstimationParams params;
  std::size_t max_length = 0;
  BigInt space_size{};
  std::uint64_t seed = 0;
  std::uint64_t probe_budget = 0;
  StepCosts costs{};
  // Accepted draws, concatenated in substream order.
  std::vector<SampleEntry> entries{};
  // Draws that did not halt within the probe budget.
  std::uint64_t rejections = 0;
  // Accepted draws per program length.
  std::map<std::size_t, std::uint64_t> per_length{};

  std::vector<std::uint64_t> runtimes() const;
  std::uint64_t draws() const { return entries.size() + rejections; }
  double halting_rate() const;
  Threshold threshold() const;
};

struct SampleOptions {
  std::size_t max_length = 9;
  std::uint64_t count = 1000;
  std::uint64_t probe_budget = 10000;
  std::uint64_t seed = 0;
  StepCosts costs{};
  int workers = 1;
};

// Number of independent substreams a sample is split into. Fixed so the
// result does not depend on the worker count.
inline constexpr std::uint64_t kSampleStreams = 64;

// Draws uniform positions of the canonical enumeration below
// cumulative(max_length), runs each with the probe budget and keeps the
// halting ones until `count` have been collected. Deterministic for a given
// (options, params) regardless of `workers`.
HaltingSample draw_halting_sample(const CountTable& table, const SampleOptions& options,
                                  const EstimationParams& params);

}  // namespace imp
