#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "imp/estimation.hpp"
#include "reference_values.hpp"

using namespace imp;

TEST_CASE("sample sizes match the published table") {
  for (const auto& row : reference::kSampleSizes) {
    const EstimationParams p(parse_rational(row.epsilon), parse_rational(row.lambda), parse_rational(row.delta));
    CHECK(sample_size(p.lambda, p.delta) == row.n);
  }
}

TEST_CASE("sample size against a floating-point oracle") {
  for (double lam : {0.3, 0.1, 0.05, 0.02, 0.007, 0.003}) {
    for (double del : {0.5, 0.2, 0.05, 0.01, 0.0001}) {
      const Rational l = parse_rational(std::to_string(lam));
      const Rational d = parse_rational(std::to_string(del));
      const long double v = std::log(1.0L / static_cast<long double>(del)) /
                            (2.0L * static_cast<long double>(lam) * static_cast<long double>(lam));
      if (std::fabs(v - std::round(v)) < 1e-6L) continue;
      CHECK(sample_size(l, d) == static_cast<std::uint64_t>(std::ceil(v)));
    }
  }
}

TEST_CASE("confidence closes the sample size formula") {
  for (const auto& row : reference::kSampleSizes) {
    const Rational lam = parse_rational(row.lambda);
    const double delta = static_cast<double>(parse_rational(row.delta));
    CHECK(confidence_from_sample(row.n, lam) <= delta);
    CHECK(confidence_from_sample(row.n - 1, lam) > delta);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(EstimationParams(Rational(1, 100), Rational(1, 100), Rational(1, 100)), std::domain_error);
  CHECK_THROWS_AS(EstimationParams(Rational(1, 100), Rational(1, 1000), Rational(0)), std::domain_error);
  CHECK_THROWS_AS(EstimationParams(Rational(1), Rational(1, 1000), Rational(1, 10)), std::domain_error);
  CHECK_THROWS_AS(sample_size(Rational(0), Rational(1, 10)), std::domain_error);
  CHECK_THROWS_AS(sample_size(Rational(1, 10), Rational(1)), std::domain_error);
}

TEST_CASE("ecdf is exact and monotone") {
  const std::vector<std::uint64_t> rt = {3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(ecdf(rt, 0) == 0);
  CHECK(ecdf(rt, 1) == Rational(2, 8));
  CHECK(ecdf(rt, 4) == Rational(5, 8));
  CHECK(ecdf(rt, 9) == 1);
  Rational prev = 0;
  for (std::uint64_t t = 0; t < 12; ++t) {
    const Rational f = ecdf(rt, t);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK_THROWS_AS(ecdf({}, 1), std::invalid_argument);
}

TEST_CASE("threshold and quantile") {
  std::vector<std::uint64_t> rt;
  for (std::uint64_t i = 100; i >= 1; --i) rt.push_back(i);
  Threshold t = threshold_from_runtimes(rt, Rational(5, 100));
  CHECK(t.max_runtime == 100);
  CHECK(t.quantile == 95);
  t = threshold_from_runtimes(rt, Rational(1, 1000));
  // ceil(99.9) = 100
  CHECK(t.quantile == 100);
  const std::vector<std::uint64_t> one = {7};
  CHECK(threshold_from_runtimes(one, Rational(1, 2)).quantile == 7);
  CHECK_THROWS_AS(threshold_from_runtimes({}, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("splitmix64 reference output") {
  std::uint64_t state = 0;
  CHECK(splitmix64(state) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("substreams and bounded draws") {
  auto a = substream(42, 3);
  auto b = substream(42, 3);
  auto c = substream(42, 4);
  const auto a0 = a();
  CHECK(a0 == b());
  CHECK(a0 != c());

  auto rng = substream(1, 0);
  std::array<int, 3> hist{};
  for (int i = 0; i < 30000; ++i) ++hist[uniform_below(rng, std::uint64_t{3})];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  CHECK(uniform_below(rng, std::uint64_t{1}) == 0);
  CHECK_THROWS_AS(uniform_below(rng, std::uint64_t{0}), std::invalid_argument);

  const BigInt bound = (BigInt(1) << 100) + 3;
  BigInt top = 0;
  for (int i = 0; i < 200; ++i) {
    const BigInt x = uniform_below(rng, bound);
    REQUIRE(x >= 0);
    REQUIRE(x < bound);
    top = std::max(top, x);
  }
  CHECK(top > (BigInt(1) << 98));
}

TEST_CASE("halting sample") {
  const CountTable& t = CountTable::shared();
  const EstimationParams params(Rational(1, 100), Rational(1, 200), Rational(1, 1000));
  SampleOptions o;
  o.max_length = 7;
  o.count = 3000;
  o.seed = 42;
  o.workers = 1;
  const HaltingSample s1 = draw_halting_sample(t, o, params);
  o.workers = 4;
  const HaltingSample s4 = draw_halting_sample(t, o, params);

  REQUIRE(s1.entries.size() == 3000);
  CHECK(s1.rejections == s4.rejections);
  CHECK(s1.space_size == t.cumulative(7));
  std::uint64_t per_length_sum = 0;
  for (const auto& [len, n] : s1.per_length) per_length_sum += n;
  CHECK(per_length_sum == 3000);

  Program p;
  for (std::size_t i = 0; i < s1.entries.size(); ++i) {
    const auto& e = s1.entries[i];
    REQUIRE(e.position == s4.entries[i].position);
    REQUIRE(e.steps == s4.entries[i].steps);
    REQUIRE(e.position < t.cumulative_u64(7));
    unrank_canonical_into(t, e.position, p);
    REQUIRE(program_length(p) == e.length);
    const RunResult r = run(p, o.probe_budget);
    REQUIRE(r.halted);
    REQUIRE(r.steps == e.steps);
  }
  // Halting proportion up to length 7 is 558 716 / 584 613.
  CHECK(std::fabs(s1.halting_rate() - 558716.0 / 584613.0) < 0.02);
  const Threshold th = s1.threshold();
  CHECK(th.quantile <= th.max_runtime);

  o.seed = 43;
  const HaltingSample other = draw_halting_sample(t, o, params);
  CHECK(other.entries[0].position != s1.entries[0].position);
}
