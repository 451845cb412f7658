#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <unordered_set>

#include "imp/enumeration.hpp"
#include "imp/syntax.hpp"
#include "oracles.hpp"
#include "reference_values.hpp"

using namespace imp;

TEST_CASE("program counts match the published table") {
  const CountTable& t = CountTable::shared();
  for (std::size_t len = 0; len < reference::kProgramsByLength.size(); ++len) {
    CHECK(t.programs(len) == BigInt(std::string(reference::kProgramsByLength[len])));
    CHECK(t.cumulative(len) == BigInt(std::string(reference::kAccumulated[len])));
    CHECK(count_programs(len) == t.programs(len));
    CHECK(cumulative_count(len) == t.cumulative(len));
  }
}

TEST_CASE("category counts match the text generator") {
  const CountTable& t = CountTable::shared();
  oracle::TextGenerator gen;
  for (std::size_t len = 0; len <= 6; ++len) {
    CHECK(t.count(Category::Numeral, len) == gen.numerals(len).size());
    CHECK(t.count(Category::Var, len) == gen.vars(len).size());
    CHECK(t.count(Category::Arith, len) == gen.arith(len).size());
    CHECK(t.count(Category::Bool, len) == gen.boolean(len).size());
    CHECK(t.programs(len) == gen.programs(len).size());
  }
}

TEST_CASE("alternatives partition each length") {
  const CountTable& t = CountTable::shared();
  for (std::size_t len = 0; len <= 20; ++len) {
    BigInt p = 0, a = 0, b = 0;
    for (Kind k : {Kind::Skip, Kind::Assign, Kind::Seq, Kind::If, Kind::While}) p += t.alternative(k, len);
    for (Kind k : {Kind::Num, Kind::Var, Kind::Add, Kind::Sub, Kind::Mul}) a += t.alternative(k, len);
    for (Kind k : {Kind::True, Kind::False, Kind::Eq, Kind::Lt, Kind::Not, Kind::Or, Kind::And})
      b += t.alternative(k, len);
    CHECK(p == t.programs(len));
    CHECK(a == t.count(Category::Arith, len));
    CHECK(b == t.count(Category::Bool, len));
  }
  CHECK(t.word_limit() >= 12);
  CHECK_THROWS_AS(t.programs(t.max_length() + 1), OutOfRange);
}

TEST_CASE("fixed-length order equals the generator order") {
  const CountTable& t = CountTable::shared();
  oracle::TextGenerator gen;
  for (std::size_t len = 1; len <= 6; ++len) {
    const auto& texts = gen.programs(len);
    for (std::size_t k = 0; k < texts.size(); ++k) {
      const Program p = unrank_fixed_length(t, len, BigInt(k));
      REQUIRE(render(p) == texts[k]);
      REQUIRE(rank_fixed_length(t, p) == k);
    }
    CHECK_THROWS_AS(unrank_fixed_length(t, len, BigInt(texts.size())), OutOfRange);
  }
}

TEST_CASE("canonical order covers lengths up to 6 exactly once") {
  const CountTable& t = CountTable::shared();
  oracle::TextGenerator gen;
  std::vector<std::string> all;
  for (std::size_t len = 1; len <= 6; ++len) {
    const auto& texts = gen.programs(len);
    all.insert(all.end(), texts.begin(), texts.end());
  }
  REQUIRE(all.size() == 38002);
  std::unordered_set<std::string> seen;
  Program fast;
  for (std::uint64_t k = 0; k < all.size(); ++k) {
    const Program p = unrank_canonical(t, BigInt(k));
    const std::string text = render(p);
    REQUIRE(text == all[k]);
    REQUIRE(render(parse(text)) == text);
    unrank_canonical_into(t, k, fast);
    REQUIRE(fast == p);
    seen.insert(text);
  }
  CHECK(seen.size() == 38002);
}

TEST_CASE("canonical rank inverts unrank") {
  const CountTable& t = CountTable::shared();
  for (std::uint64_t k = 0; k < 200000; ++k) {
    REQUIRE(rank_canonical(t, unrank_canonical(t, BigInt(k))) == k);
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    // Positions spread over lengths up to 30.
    const std::size_t len = 1 + rng() % 30;
    if (t.programs(len) == 0) continue;
    BigInt k = t.cumulative(len - 1) + (BigInt(rng()) * BigInt(rng()) * BigInt(rng())) % t.programs(len);
    const Program p = unrank_canonical(t, k);
    REQUIRE(program_length(p) == len);
    REQUIRE(t.canonical_length(k) == len);
    REQUIRE(rank_canonical(t, p) == k);
  }
}

TEST_CASE("word-sized fast path") {
  const CountTable& t = CountTable::shared();
  std::mt19937_64 rng(11);
  const std::uint64_t space = t.cumulative_u64(t.word_limit());
  Program fast;
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t k = rng() % space;
    unrank_canonical_into(t, k, fast);
    REQUIRE(fast == unrank_canonical(t, BigInt(k)));
    REQUIRE(t.canonical_length(k) == program_length(fast));
  }
}

TEST_CASE("ranking is length aware") {
  const CountTable& t = CountTable::shared();
  CHECK(rank_canonical(t, parse("skip")) == 0);
  CHECK(rank_canonical(t, parse("(skip; skip)")) == 1);
  CHECK(rank_canonical(t, parse("(while true do skip)")) == 2);
  CHECK(rank_canonical(t, parse("(while false do skip)")) == 3);
  const Program p = parse("(x[0] := 7; (while (x[1] < 7) do x[1] := (x[1] + 1)))");
  CHECK(unrank_canonical(t, rank_canonical(t, p)) == p);
}

TEST_CASE("cantor pairing") {
  for (std::uint64_t x = 0; x < 60; ++x) {
    for (std::uint64_t y = 0; y < 60; ++y) {
      const BigInt z = cantor_pair(x, y);
      REQUIRE(z == BigInt((x + y) * (x + y + 1) / 2 + y));
      const auto [a, b] = cantor_unpair(z);
      REQUIRE(a == x);
      REQUIRE(b == y);
    }
  }
  const BigInt big = BigInt(1) << 300;
  const auto [a, b] = cantor_unpair(cantor_pair(big, big + 1));
  CHECK(a == big);
  CHECK(b == big + 1);
}

TEST_CASE("base enumeration is a bijection on a prefix") {
  CHECK(render(unrank_base(0)) == "skip");
  std::unordered_set<std::string> seen;
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const Program p = unrank_base(k);
    REQUIRE(rank_base(p) == k);
    seen.insert(render(p));
  }
  CHECK(seen.size() == 100000);
}

TEST_CASE("base positions of subprograms are smaller") {
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const Program p = unrank_base(k);
    for (NodeId id : statement_subtrees(p)) REQUIRE(rank_base(p.subtree(id)) < k);
  }
}

TEST_CASE("every short program has a distinct base position") {
  const CountTable& t = CountTable::shared();
  std::set<BigInt> positions;
  for (std::uint64_t k = 0; k < t.cumulative_u64(5); ++k) {
    const Program p = unrank_canonical(t, BigInt(k));
    const BigInt b = rank_base(p);
    REQUIRE(unrank_base(b) == p);
    positions.insert(b);
  }
  CHECK(positions.size() == 2232);
}

TEST_CASE("base enumeration reaches large programs") {
  const Program p = parse("(x[0] := 4; (while (x[1] < 4) do (x[1] := (x[1] + 1); x[0] := (x[0] * x[0]))))");
  const BigInt k = rank_base(p);
  CHECK(k > BigInt(1) << 64);
  CHECK(unrank_base(k) == p);
  CHECK_THROWS_AS(unrank_base(BigInt(-1)), OutOfRange);
}
