#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "imp/analysis.hpp"
#include "imp/sweep.hpp"
#include "imp/syntax.hpp"
#include "reference_values.hpp"

using namespace imp;

namespace {

std::vector<RunRecord> collect(std::size_t max_length, SweepOptions o = {}) {
  std::vector<RunRecord> out;
  sweep(CountTable::shared(), max_length, o, [&](std::span<const RunRecord> b) { out.insert(out.end(), b.begin(), b.end()); });
  return out;
}

template <typename Fold>
Fold fold(std::span<const RunRecord> records) {
  Fold f;
  f.add(records);
  return f;
}

// Shared sweep of every program up to length 6.
const std::vector<RunRecord>& s6() {
  static const std::vector<RunRecord> records = collect(6);
  return records;
}

template <std::size_t N>
void check_family(Family f, const std::array<reference::FamilyRow, N>& rows) {
  for (const auto& row : rows) {
    const Program p = family_program(f, BigInt(row.n));
    CAPTURE(row.n);
    CHECK(program_length(p) == row.program_length);
    const RunResult r = run(p, 100000);
    REQUIRE(r.halted);
    CHECK(output(r.store).str() == row.output);
  }
}

}  // namespace

TEST_CASE("tiny sweeps") {
  const auto one = collect(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].halted);
  CHECK(one[0].output.empty());
  CHECK(one[0].length == 1);

  const auto three = collect(3);
  REQUIRE(three.size() == 4);
  std::size_t halted = 0;
  for (const auto& r : three) halted += r.halted;
  CHECK(halted == 3);
  CHECK_FALSE(three[2].halted);
  CHECK(three[2].steps == 10000);
}

TEST_CASE("records follow positions") {
  const auto& rs = s6();
  REQUIRE(rs.size() == 38002);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    REQUIRE(rs[i].position == i);
    if (!rs[i].halted) {
      REQUIRE(rs[i].output.empty());
      REQUIRE(rs[i].steps == 10000);
    }
  }
}

TEST_CASE("parallel sweep matches the serial reference") {
  const CountTable& t = CountTable::shared();
  const std::uint64_t end = t.cumulative_u64(5);
  SweepOptions o;
  std::vector<RunRecord> serial;
  sweep_serial(t, 0, end, o, [&](std::span<const RunRecord> b) { serial.insert(serial.end(), b.begin(), b.end()); });
  for (int workers : {1, 2, 3, 8}) {
    for (std::uint64_t chunk : {1ull, 37ull, 4096ull}) {
      o.workers = workers;
      o.chunk = chunk;
      std::vector<RunRecord> par;
      sweep_parallel(t, 0, end, o, [&](std::span<const RunRecord> b) { par.insert(par.end(), b.begin(), b.end()); });
      REQUIRE(par == serial);
    }
  }
}

TEST_CASE("partition_range") {
  for (std::uint64_t n : {0ull, 1ull, 7ull, 100ull}) {
    for (std::size_t parts : {1u, 3u, 8u}) {
      const auto r = partition_range(5, 5 + n, parts);
      REQUIRE(r.size() == parts);
      std::uint64_t at = 5;
      for (const auto& [lo, hi] : r) {
        CHECK(lo == at);
        CHECK(hi >= lo);
        CHECK(hi - lo <= n / parts + 1);
        at = hi;
      }
      CHECK(at == 5 + n);
    }
  }
  CHECK_THROWS(partition_range(0, 10, 0));
}

TEST_CASE("census matches the published rows up to length 6") {
  const auto rows = fold<Census>(s6()).rows(CountTable::shared());
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& ref = reference::kCensus[i];
    CHECK(rows[i].length == ref.length);
    CHECK(rows[i].halting == ref.halt);
    CHECK(rows[i].non_halting == ref.non_halt);
    CHECK(rows[i].halting_percent == doctest::Approx(ref.halt_percent));
    CHECK(rows[i].non_halting_percent == doctest::Approx(ref.non_halt_percent));
  }
}

TEST_CASE("incomplete lengths are rejected") {
  const auto& rs = s6();
  Census c;
  c.add(std::span<const RunRecord>(rs.data(), 200));
  CHECK_THROWS_AS(c.rows(CountTable::shared()), IncompleteLength);
}

TEST_CASE("census is budget robust") {
  SweepOptions o;
  o.budget = 100000;
  CHECK(fold<Census>(collect(6, o)) == fold<Census>(s6()));
}

TEST_CASE("folds merge in any grouping") {
  const auto& rs = s6();
  const std::span<const RunRecord> all(rs);
  const auto a = all.subspan(0, 1000), b = all.subspan(1000, 20000), c = all.subspan(21000);

  Census left = fold<Census>(a);
  Census bc = fold<Census>(b);
  bc.merge(fold<Census>(c));
  left.merge(bc);
  Census right = fold<Census>(c);
  right.merge(fold<Census>(a));
  right.merge(fold<Census>(b));
  CHECK(left == fold<Census>(all));
  CHECK(right == fold<Census>(all));

  Histograms h = fold<Histograms>(c);
  h.merge(fold<Histograms>(a));
  h.merge(fold<Histograms>(b));
  CHECK(h == fold<Histograms>(all));

  ComplexityTable x = fold<ComplexityTable>(c);
  x.merge(fold<ComplexityTable>(b));
  x.merge(fold<ComplexityTable>(a));
  const ComplexityTable whole = fold<ComplexityTable>(all);
  const auto xs = x.sorted(), ws = whole.sorted();
  REQUIRE(xs.size() == ws.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(xs[i].output == ws[i].output);
    CHECK(xs[i].best_length == ws[i].best_length);
    CHECK(xs[i].witness == ws[i].witness);
    CHECK(xs[i].producers == ws[i].producers);
  }
  CHECK(x.total_halting() == whole.total_halting());
}

TEST_CASE("complexity table") {
  const auto& rs = s6();
  const ComplexityTable t = fold<ComplexityTable>(rs);
  const ComplexityEntry* eps = t.find(Bitstring());
  REQUIRE(eps != nullptr);
  CHECK(eps->best_length == 1);
  CHECK(eps->witness == 0);

  std::uint64_t producers = 0;
  const auto entries = t.sorted();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    producers += entries[i].producers;
    if (i > 0) CHECK(entries[i - 1].output < entries[i].output);
  }
  CHECK(producers == fold<Census>(rs).total_halting());
  CHECK(producers == t.total_halting());

  const CountTable& table = CountTable::shared();
  for (const auto& e : entries) {
    // Witness validity.
    const RunResult r = run(unrank_canonical(table, BigInt(e.witness)), 10000);
    REQUIRE(r.halted);
    REQUIRE(output(r.store) == e.output);
    REQUIRE(rs[e.witness].length == e.best_length);
    // Upper-bound soundness.
    const auto bound = trivial_bound(e.output).length;
    if (bound <= 6) REQUIRE(e.best_length <= bound);
  }
  // The witness is the first shortest producer.
  for (const auto& r : rs) {
    if (!r.halted) continue;
    const ComplexityEntry* e = t.find(r.output);
    REQUIRE(e != nullptr);
    REQUIRE((r.length > e->best_length || (r.length == e->best_length && r.position >= e->witness)));
  }
}

TEST_CASE("trivial bound") {
  auto tb = trivial_bound(Bitstring());
  CHECK(render(tb.program) == "skip");
  CHECK(tb.length == 1);
  tb = trivial_bound(Bitstring("1000"));
  CHECK(render(tb.program) == "x[0] := 23");
  CHECK(tb.length == 5);
  CHECK(program_length(tb.program) == 5);
  tb = trivial_bound(Bitstring("0"));
  CHECK(render(tb.program) == "x[0] := 1");
  CHECK(tb.length == 4);
  const RunResult r = run(trivial_bound(Bitstring("0110101")).program, 10);
  CHECK(output(r.store).str() == "0110101");
}

TEST_CASE("algorithmic probability") {
  ComplexityTable t;
  t.add(RunRecord{0, 1, true, 0, Bitstring()});
  const auto all = algorithmic_probability(t, Bitstring(), 1);
  CHECK(all.probability == 1);
  CHECK(all.complexity_bits == doctest::Approx(0.0));
  const auto rare = algorithmic_probability(t, Bitstring(), 1000000);
  CHECK(rare.probability == Rational(1, 1000000));
  CHECK(rare.complexity_bits == doctest::Approx(19.93).epsilon(1e-3));
  CHECK_THROWS_AS(algorithmic_probability(t, Bitstring("1"), 10), std::out_of_range);
}

TEST_CASE("histograms") {
  const auto& rs = s6();
  const Histograms h = fold<Histograms>(rs);
  const auto rows = fold<Census>(rs).rows(CountTable::shared());
  for (const auto& row : rows) {
    std::uint64_t sum = 0;
    for (const auto& [steps, n] : h.length_steps().at(row.length)) sum += n;
    CHECK(sum == row.halting);
    std::uint64_t osum = 0;
    for (const auto& [olen, n] : h.length_output().at(row.length)) osum += n;
    CHECK(osum == row.halting);
  }
  CHECK(h.output_length().at(0) == fold<ComplexityTable>(rs).find(Bitstring())->producers);
}

TEST_CASE("program families") {
  check_family(Family::Pows2, reference::kPows2);
  check_family(Family::Fact, reference::kFact);
  check_family(Family::Expt, reference::kExpt);
  check_family(Family::ExptPows2, reference::kExptPows2);
  CHECK(render(family_program(Family::Pows2, 3)) ==
        "(x[0] := 1; (while (x[1] < 3) do (x[1] := (x[1] + 1); x[0] := (x[0] * 2))))");
  CHECK(parse_family("expt-pows2") == Family::ExptPows2);
  CHECK(family_name(Family::Fact) == "fact");
  CHECK_THROWS_AS(parse_family("fib"), std::invalid_argument);
}
