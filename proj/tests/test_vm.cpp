#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "imp/enumeration.hpp"
#include "imp/syntax.hpp"
#include "imp/vm.hpp"
#include "reference_values.hpp"

using namespace imp;

namespace {

RunResult run_text(std::string_view text, std::uint64_t budget, RunOptions options = {}) {
  return run(parse(text), budget, options);
}

}  // namespace

TEST_CASE("worked example") {
  const RunResult r = run_text(reference::kWorkedExample, 10000);
  CHECK(r.halted);
  CHECK(output(r.store).str() == reference::kWorkedExampleOutput);
  // Three assignments and two sequence eliminations.
  CHECK(r.steps == 5);
}

TEST_CASE("store semantics") {
  Store s;
  CHECK(s.all_zero());
  s.set(5, 7);
  CHECK(s.get(5) == 7);
  CHECK(s.get(4) == 0);
  s.set(5, 0);
  CHECK(s.all_zero());
  s.set(2, 3);
  // Registers 0 and 1 are zero and contribute the empty string.
  CHECK(output(s).str() == "00");
}

TEST_CASE("arithmetic") {
  CHECK(run_text("x[0] := (2 - 5)", 100).store.all_zero());
  CHECK(run_text("x[0] := (5 - 2)", 100).store.get(0) == 3);
  CHECK(run_text("x[0] := ((3 * 4) + 1)", 100).store.get(0) == 13);
  const RunResult big = run_text("(x[0] := 99999999999; x[0] := (x[0] * x[0]))", 100);
  CHECK(big.store.get(0) == BigInt("9999999999800000000001"));
}

TEST_CASE("step costs") {
  CHECK(run_text("skip", 1).steps == 0);
  CHECK(run_text("(skip; skip)", 10).steps == 1);
  CHECK(run_text("x[0] := ((1 + 2) * 3)", 100).steps == 3);
  RunOptions leaves;
  leaves.costs = {1, 1, 1};
  CHECK(run_text("x[0] := ((1 + 2) * 3)", 100, leaves).steps == 6);
  // Both operands of a connective are evaluated.
  CHECK(run_text("(if (true \xE2\x88\xA8 (1 < 2)) then skip else skip)", 100).steps == 3);
  CHECK(run_text("(while false do skip)", 100).steps == 1);
  RunOptions heavy;
  heavy.costs = {3, 0, 0};
  CHECK(run_text("(x[0] := (1 + 1); skip)", 100, heavy).steps == 6);
}

TEST_CASE("budget boundary") {
  const RunResult exact = run_text("x[0] := (1 + 1)", 2);
  CHECK(exact.halted);
  CHECK(exact.steps == 2);
  const RunResult short_by_one = run_text("x[0] := (1 + 1)", 1);
  CHECK_FALSE(short_by_one.halted);
  CHECK(short_by_one.steps == 1);
  CHECK_THROWS_AS(run_text("skip", 0), std::invalid_argument);
}

TEST_CASE("non-halting programs") {
  for (bool check : {true, false}) {
    RunOptions o;
    o.loop_check = check;
    const RunResult r = run_text("(while true do skip)", 100, o);
    CHECK_FALSE(r.halted);
    CHECK(r.steps == 100);
    const RunResult g = run_text("(while true do x[0] := (x[0] + 1))", 1000, o);
    CHECK_FALSE(g.halted);
    CHECK(g.steps == 1000);
  }
}

TEST_CASE("budget monotonicity over short programs") {
  const CountTable& t = CountTable::shared();
  const std::uint64_t n = t.cumulative_u64(5);
  Program p;
  for (std::uint64_t k = 0; k < n; ++k) {
    unrank_canonical_into(t, k, p);
    const RunResult full = run(p, 10000);
    for (std::uint64_t b = 1; b <= 12; ++b) {
      const RunResult r = run(p, b);
      if (full.halted && full.steps <= b) {
        REQUIRE(r.halted);
        REQUIRE(r.steps == full.steps);
        REQUIRE(r.store == full.store);
      } else {
        REQUIRE_FALSE(r.halted);
        REQUIRE(r.steps == b);
      }
    }
  }
}

TEST_CASE("loop check never changes a result") {
  const CountTable& t = CountTable::shared();
  const std::uint64_t n = t.cumulative_u64(6);
  Program p;
  RunOptions off;
  off.loop_check = false;
  for (std::uint64_t k = 0; k < n; ++k) {
    unrank_canonical_into(t, k, p);
    const RunResult a = run(p, 2000);
    const RunResult b = run(p, 2000, off);
    REQUIRE(a.halted == b.halted);
    REQUIRE(a.steps == b.steps);
    if (a.halted) REQUIRE(a.store == b.store);
  }
}

TEST_CASE("rewriting oracle agrees with the interpreter") {
  const CountTable& t = CountTable::shared();
  const std::uint64_t n = t.cumulative_u64(6);
  Program p;
  std::uint64_t unknown = 0;
  for (const StepCosts costs : {StepCosts{1, 1, 0}, StepCosts{1, 1, 1}}) {
    RunOptions o;
    o.costs = costs;
    for (std::uint64_t k = 0; k < n; ++k) {
      unrank_canonical_into(t, k, p);
      const DivergenceReport d = detect_divergence(p, 5000, costs);
      const RunResult r = run(p, 10000, o);
      switch (d.verdict) {
        case Verdict::Halts:
          REQUIRE(r.halted);
          REQUIRE(r.steps == d.steps);
          REQUIRE(r.store == d.store);
          break;
        case Verdict::Diverges:
          REQUIRE_FALSE(r.halted);
          break;
        case Verdict::Unknown:
          ++unknown;
          REQUIRE_FALSE(r.halted);
          break;
      }
    }
  }
  MESSAGE("configurations left undecided by the oracle: " << unknown);
}

TEST_CASE("oracle verdicts") {
  CHECK(detect_divergence(parse("(while true do skip)"), 100).verdict == Verdict::Diverges);
  CHECK(detect_divergence(parse("(while true do x[0] := (x[0] + 1))"), 100).verdict == Verdict::Unknown);
  const DivergenceReport h = detect_divergence(parse(reference::kWorkedExample), 100);
  CHECK(h.verdict == Verdict::Halts);
  CHECK(h.steps == 5);
  CHECK(output(h.store).str() == "1000");
}
