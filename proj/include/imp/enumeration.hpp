#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "imp/bigint.hpp"
#include "imp/program.hpp"

namespace imp {

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Exact number of syntax trees per category and length, built once up to a
// fixed maximum length and immutable afterwards.
//
// Per-alternative counts are kept because both unranking and ranking walk
// the alternatives of a category in grammar order. Lengths whose counts all
// fit in 64 bits also get a machine-word copy of the table.
class CountTable {
 public:
  static constexpr std::size_t kDefaultMaxLength = 40;

  explicit CountTable(std::size_t max_length = kDefaultMaxLength);

  std::size_t max_length() const { return max_length_; }

  // Count for one category; 0 above max_length() is an error.
  const BigInt& count(Category c, std::size_t len) const;
  // Number of programs (category P) of length exactly len.
  const BigInt& programs(std::size_t len) const { return count(Category::Program, len); }
  // Programs of length <= len.
  const BigInt& cumulative(std::size_t len) const;

  // Count of the trees of length len rooted at a given production.
  const BigInt& alternative(Kind k, std::size_t len) const;

  // Largest length L such that every count at lengths <= L, and the
  // cumulative program count at L, fit in 64 bits.
  std::size_t word_limit() const { return word_limit_; }
  std::uint64_t count_u64(Category c, std::size_t len) const;
  std::uint64_t alternative_u64(Kind k, std::size_t len) const;
  std::uint64_t cumulative_u64(std::size_t len) const;

  // Shortest length whose cumulative count exceeds k.
  std::size_t canonical_length(const BigInt& k) const;
  std::size_t canonical_length(std::uint64_t k) const;

  // The global instance used by the convenience overloads below.
  static const CountTable& shared();

 private:
  void check(std::size_t len) const;

  std::size_t max_length_;
  std::size_t word_limit_ = 0;
  std::array<std::vector<BigInt>, kCategoryCount> counts_;
  std::array<std::vector<BigInt>, 17> alternatives_;
  std::vector<BigInt> cumulative_;
  std::array<std::vector<std::uint64_t>, kCategoryCount> counts_u64_;
  std::array<std::vector<std::uint64_t>, 17> alternatives_u64_;
  std::vector<std::uint64_t> cumulative_u64_;
};

BigInt count_programs(std::size_t len);
BigInt cumulative_count(std::size_t len);

// Fixed-length enumeration: bijection [0, count(len)) -> programs of length
// len, ordered by production (grammar order), then by child lengths, then by
// the children themselves from left to right. Throws OutOfRange.
Program unrank_fixed_length(const CountTable& t, std::size_t len, const BigInt& k);
BigInt rank_fixed_length(const CountTable& t, const Program& p);

// Canonical enumeration: all programs sorted by length, then by the
// fixed-length order.
Program unrank_canonical(const CountTable& t, const BigInt& k);
BigInt rank_canonical(const CountTable& t, const Program& p);

// Machine-word fast path for the sweep and sampler. Requires
// k < t.cumulative_u64(t.word_limit()); reuses out's storage.
void unrank_canonical_into(const CountTable& t, std::uint64_t k, Program& out);

// Ranking of a single subtree within its own category's fixed-length
// enumeration (used for non-statement subtrees and by the tests).
BigInt rank_fixed_length(const CountTable& t, const Program& p, NodeId id);

// Base enumeration: a bijection between naturals and programs decoded top
// down. Each node takes the position apart by Euclidean division into an
// alternative selector and a remainder, and the remainder is split among the
// children with Cantor pairing, so every child position is strictly smaller
// than its parent's.
Program unrank_base(const BigInt& k);
BigInt rank_base(const Program& p);

// Cantor pairing and its inverse; triples nest as pair(a, pair(b, c)).
BigInt cantor_pair(const BigInt& x, const BigInt& y);
std::pair<BigInt, BigInt> cantor_unpair(const BigInt& z);

}  // namespace imp
