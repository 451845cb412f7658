#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "imp/bitstring.hpp"
#include "imp/enumeration.hpp"
#include "imp/program.hpp"
#include "imp/sweep.hpp"

namespace imp {

class IncompleteLength : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CensusRow {
  std::size_t length = 0;
  std::uint64_t halting = 0;
  std::uint64_t non_halting = 0;
  // Percentages rounded to one decimal.
  double halting_percent = 0;
  double non_halting_percent = 0;
};

// Halting / non-halting counts per program length. Folds are associative
// and commutative, so partial censuses can be merged in any order.
class Census {
 public:
  void add(const RunRecord& r);
  void add(std::span<const RunRecord> records) {
    for (const auto& r : records) add(r);
  }
  void merge(const Census& other);

  // One row per nonempty length. Throws IncompleteLength if a length seen in
  // the records is not fully covered according to the table.
  std::vector<CensusRow> rows(const CountTable& table) const;

  std::uint64_t total_halting() const;
  std::uint64_t total() const;

  friend bool operator==(const Census&, const Census&) = default;

 private:
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> counts_;
};

// Shortest known producer of one output string.
struct ComplexityEntry {
  Bitstring output;
  std::size_t best_length = 0;
  // Least canonical position among the producers of best_length.
  std::uint64_t witness = 0;
  std::uint64_t producers = 0;
};

class ComplexityTable {
 public:
  void add(const RunRecord& r);
  void add(std::span<const RunRecord> records) {
    for (const auto& r : records) add(r);
  }
  void merge(const ComplexityTable& other);

  const ComplexityEntry* find(const Bitstring& output) const;
  std::size_t size() const { return entries_.size(); }
  std::uint64_t total_halting() const { return total_halting_; }

  // Entries sorted by output in canonical string order.
  std::vector<ComplexityEntry> sorted() const;

 private:
  std::unordered_map<Bitstring, ComplexityEntry> entries_;
  std::uint64_t total_halting_ = 0;
};

// Upper bound on the shortest producer of b: skip for the empty string,
// otherwise x[0] := n with n the canonical index of b.
struct TrivialBound {
  Program program;
  std::size_t length;
};
TrivialBound trivial_bound(const Bitstring& b);

struct AlgorithmicProbability {
  Rational probability;
  // -log2(probability).
  double complexity_bits;
};

// producers(s) / total_halting. Throws std::out_of_range if s never occurs.
AlgorithmicProbability algorithmic_probability(const ComplexityTable& table, const Bitstring& s,
                                               std::uint64_t total_halting);

// Exact count matrices for log-scaled plotting.
class Histograms {
 public:
  void add(const RunRecord& r);
  void add(std::span<const RunRecord> records) {
    for (const auto& r : records) add(r);
  }
  void merge(const Histograms& other);

  // (program length, steps) -> halting programs.
  const std::map<std::size_t, std::map<std::uint64_t, std::uint64_t>>& length_steps() const { return length_steps_; }
  // |output| -> halting programs.
  const std::map<std::size_t, std::uint64_t>& output_length() const { return output_length_; }
  // (program length, |output|) -> halting programs.
  const std::map<std::size_t, std::map<std::size_t, std::uint64_t>>& length_output() const {
    return length_output_;
  }

  friend bool operator==(const Histograms&, const Histograms&) = default;

 private:
  std::map<std::size_t, std::map<std::uint64_t, std::uint64_t>> length_steps_;
  std::map<std::size_t, std::uint64_t> output_length_;
  std::map<std::size_t, std::map<std::size_t, std::uint64_t>> length_output_;
};

enum class Family { Pows2, Fact, Expt, ExptPows2 };

// Throws std::invalid_argument for an unknown name.
Family parse_family(std::string_view name);
std::string_view family_name(Family f);

// The loop programs computing 2^n, n!, n^n and n^(2^n), as printed:
// (x[0] := init; (while (x[1] < n) do (x[1] := (x[1] + 1); x[0] := (x[0] * f))))
Program family_program(Family f, const BigInt& n);

}  // namespace imp
