#include "imp/estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <omp.h>

namespace imp {

namespace {

using Float = boost::multiprecision::cpp_dec_float_100;

Float to_float(const Rational& r) {
  return Float(boost::multiprecision::numerator(r)) / Float(boost::multiprecision::denominator(r));
}

bool in_unit_interval(const Rational& r) { return r > 0 && r < 1; }

}  // namespace

EstimationParams::EstimationParams(Rational eps, Rational lam, Rational del)
    : epsilon(std::move(eps)), lambda(std::move(lam)), delta(std::move(del)) {
  if (!in_unit_interval(epsilon)) throw std::domain_error("epsilon must lie in (0, 1)");
  if (!in_unit_interval(delta)) throw std::domain_error("delta must lie in (0, 1)");
  if (!(lambda > 0 && lambda < epsilon)) throw std::domain_error("lambda must lie in (0, epsilon)");
}

std::uint64_t sample_size(const Rational& lambda, const Rational& delta) {
  if (!in_unit_interval(lambda)) throw std::domain_error("lambda must lie in (0, 1)");
  if (!in_unit_interval(delta)) throw std::domain_error("delta must lie in (0, 1)");
  const Float lam = to_float(lambda);
  const Float value = log(Float(1) / to_float(delta)) / (2 * lam * lam);
  // The working precision leaves far more than 60 correct digits; the
  // ceiling is accepted only if it is the same at both ends of that band.
  const Float slack = value * Float("1e-60");
  const Float lo = ceil(value - slack);
  const Float hi = ceil(value + slack);
  if (lo != hi) throw std::domain_error("sample size too close to an integer to certify");
  if (hi > Float(std::numeric_limits<std::uint64_t>::max())) throw std::domain_error("sample size exceeds 64 bits");
  return static_cast<std::uint64_t>(boost::multiprecision::cpp_int(hi));
}

double confidence_from_sample(std::uint64_t n, const Rational& lambda) {
  if (n == 0) throw std::domain_error("sample size must be at least 1");
  if (!in_unit_interval(lambda)) throw std::domain_error("lambda must lie in (0, 1)");
  const Float lam = to_float(lambda);
  return static_cast<double>(exp(-2 * Float(n) * lam * lam));
}

Rational ecdf(std::span<const std::uint64_t> runtimes, std::uint64_t t) {
  if (runtimes.empty()) throw std::invalid_argument("empty sample");
  const auto hits = std::count_if(runtimes.begin(), runtimes.end(), [t](std::uint64_t r) { return r <= t; });
  return Rational(hits, static_cast<long long>(runtimes.size()));
}

Threshold threshold_from_runtimes(std::span<const std::uint64_t> runtimes, const Rational& epsilon) {
  if (runtimes.empty()) throw std::invalid_argument("empty sample");
  std::vector<std::uint64_t> sorted(runtimes.begin(), runtimes.end());
  std::sort(sorted.begin(), sorted.end());
  const Rational position = (1 - epsilon) * Rational(static_cast<long long>(sorted.size()));
  BigInt rank = boost::multiprecision::numerator(position) / boost::multiprecision::denominator(position);
  if (rank * boost::multiprecision::denominator(position) != boost::multiprecision::numerator(position)) ++rank;
  auto r = static_cast<std::size_t>(std::clamp<BigInt>(rank, 1, sorted.size()));
  return {sorted.back(), sorted[r - 1]};
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state) ^ (index * 0xD1B54A32D192ED03ULL);
  return std::mt19937_64(splitmix64(mixed));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t mask = std::bit_ceil(bound) == 0 ? ~0ULL : std::bit_ceil(bound) - 1;
  for (;;) {
    const std::uint64_t x = rng() & mask;
    if (x < bound) return x;
  }
}

BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("empty range");
  if (auto small = to_u64(bound)) return uniform_below(rng, *small);
  const std::size_t bits = boost::multiprecision::msb(BigInt(bound - 1)) + 1;
  for (;;) {
    BigInt x = 0;
    std::size_t have = 0;
    while (have < bits) {
      x <<= 64;
      x |= rng();
      have += 64;
    }
    x >>= (have - bits);
    if (x < bound) return x;
  }
}

std::vector<std::uint64_t> HaltingSample::runtimes() const {
  std::vector<std::uint64_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.steps);
  return out;
}

double HaltingSample::halting_rate() const {
  return draws() == 0 ? 0.0 : static_cast<double>(entries.size()) / static_cast<double>(draws());
}

Threshold HaltingSample::threshold() const {
  const auto r = runtimes();
  return threshold_from_runtimes(r, params.epsilon);
}

HaltingSample draw_halting_sample(const CountTable& table, const SampleOptions& options,
                                  const EstimationParams& params) {
  if (options.count == 0) throw std::invalid_argument("sample size must be at least 1");
  if (options.max_length > table.word_limit()) {
    throw OutOfRange("sampling is limited to lengths whose program counts fit in 64 bits");
  }
  const std::uint64_t space = table.cumulative_u64(options.max_length);
  if (space == 0) throw std::invalid_argument("the program space is empty");

  HaltingSample sample{.params = params};
  sample.max_length = options.max_length;
  sample.space_size = space;
  sample.seed = options.seed;
  sample.probe_budget = options.probe_budget;
  sample.costs = options.costs;

  const std::uint64_t streams = std::min(kSampleStreams, options.count);
  struct Stream {
    std::vector<SampleEntry> entries;
    std::uint64_t rejections = 0;
  };
  std::vector<Stream> results(streams);
  RunOptions run_options;
  run_options.costs = options.costs;

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.workers))
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(streams); ++s) {
    const auto idx = static_cast<std::uint64_t>(s);
    const std::uint64_t quota = options.count / streams + (idx < options.count % streams ? 1 : 0);
    auto rng = substream(options.seed, idx);
    Stream& out = results[idx];
    out.entries.reserve(quota);
    Program program;
    while (out.entries.size() < quota) {
      const std::uint64_t position = uniform_below(rng, space);
      unrank_canonical_into(table, position, program);
      const RunResult r = run(program, options.probe_budget, run_options);
      if (r.halted) {
        out.entries.push_back({position, static_cast<std::uint32_t>(program_length(program)), r.steps});
      } else {
        ++out.rejections;
      }
    }
  }

  for (auto& s : results) {
    sample.rejections += s.rejections;
    for (const auto& e : s.entries) ++sample.per_length[e.length];
    sample.entries.insert(sample.entries.end(), s.entries.begin(), s.entries.end());
  }
  return sample;
}

}  // namespace imp
