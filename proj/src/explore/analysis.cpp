#include "imp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "imp/syntax.hpp"

namespace imp {

namespace {

double percent_one_decimal(std::uint64_t part, std::uint64_t whole) {
  if (whole == 0) return 0.0;
  // Round half up on exact integers: round(1000 * part / whole) / 10.
  const std::uint64_t tenths = (2000 * part + whole) / (2 * whole);
  return static_cast<double>(tenths) / 10.0;
}

}  // namespace

void Census::add(const RunRecord& r) {
  auto& c = counts_[r.length];
  if (r.halted) ++c.first;
  else ++c.second;
}

void Census::merge(const Census& other) {
  for (const auto& [len, c] : other.counts_) {
    auto& mine = counts_[len];
    mine.first += c.first;
    mine.second += c.second;
  }
}

std::vector<CensusRow> Census::rows(const CountTable& table) const {
  std::vector<CensusRow> out;
  for (const auto& [len, c] : counts_) {
    const std::uint64_t total = c.first + c.second;
    if (BigInt(total) != table.programs(len)) {
      throw IncompleteLength("length " + std::to_string(len) + " has " + std::to_string(total) + " of " +
                             table.programs(len).str() + " programs");
    }
    CensusRow row;
    row.length = len;
    row.halting = c.first;
    row.non_halting = c.second;
    row.halting_percent = percent_one_decimal(c.first, total);
    row.non_halting_percent = percent_one_decimal(c.second, total);
    out.push_back(row);
  }
  return out;
}

std::uint64_t Census::total_halting() const {
  std::uint64_t s = 0;
  for (const auto& [len, c] : counts_) s += c.first;
  return s;
}

std::uint64_t Census::total() const {
  std::uint64_t s = 0;
  for (const auto& [len, c] : counts_) s += c.first + c.second;
  return s;
}

void ComplexityTable::add(const RunRecord& r) {
  if (!r.halted) return;
  ++total_halting_;
  auto [it, fresh] = entries_.try_emplace(r.output);
  ComplexityEntry& e = it->second;
  if (fresh) {
    e.output = r.output;
    e.best_length = r.length;
    e.witness = r.position;
  } else if (r.length < e.best_length || (r.length == e.best_length && r.position < e.witness)) {
    e.best_length = r.length;
    e.witness = r.position;
  }
  ++e.producers;
}

void ComplexityTable::merge(const ComplexityTable& other) {
  total_halting_ += other.total_halting_;
  for (const auto& [out, theirs] : other.entries_) {
    auto [it, fresh] = entries_.try_emplace(out, theirs);
    if (fresh) continue;
    ComplexityEntry& e = it->second;
    if (theirs.best_length < e.best_length ||
        (theirs.best_length == e.best_length && theirs.witness < e.witness)) {
      e.best_length = theirs.best_length;
      e.witness = theirs.witness;
    }
    e.producers += theirs.producers;
  }
}

const ComplexityEntry* ComplexityTable::find(const Bitstring& output) const {
  auto it = entries_.find(output);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<ComplexityEntry> ComplexityTable::sorted() const {
  std::vector<ComplexityEntry> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.output < b.output; });
  return out;
}

TrivialBound trivial_bound(const Bitstring& b) {
  Program p;
  if (b.empty()) return {p, 1};
  p.clear();
  const BigInt n = string_to_nat(b);
  NodeId target = p.var(0);
  p.assign(target, p.num(n));
  // assignment node + x[0] (two) + the digits of n
  return {p, 3 + decimal_digits(n)};
}

AlgorithmicProbability algorithmic_probability(const ComplexityTable& table, const Bitstring& s,
                                               std::uint64_t total_halting) {
  const ComplexityEntry* e = table.find(s);
  if (e == nullptr) throw std::out_of_range("output '" + s.str() + "' was never produced");
  if (total_halting == 0) throw std::invalid_argument("no halting programs");
  AlgorithmicProbability ap;
  ap.probability = Rational(e->producers) / Rational(total_halting);
  ap.complexity_bits = -std::log2(static_cast<double>(e->producers) / static_cast<double>(total_halting));
  return ap;
}

void Histograms::add(const RunRecord& r) {
  if (!r.halted) return;
  ++length_steps_[r.length][r.steps];
  ++output_length_[r.output.size()];
  ++length_output_[r.length][r.output.size()];
}

void Histograms::merge(const Histograms& other) {
  for (const auto& [len, row] : other.length_steps_)
    for (const auto& [steps, n] : row) length_steps_[len][steps] += n;
  for (const auto& [olen, n] : other.output_length_) output_length_[olen] += n;
  for (const auto& [len, row] : other.length_output_)
    for (const auto& [olen, n] : row) length_output_[len][olen] += n;
}

Family parse_family(std::string_view name) {
  if (name == "pows2") return Family::Pows2;
  if (name == "fact") return Family::Fact;
  if (name == "expt") return Family::Expt;
  if (name == "exptPows2" || name == "expt-pows2") return Family::ExptPows2;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Pows2:
      return "pows2";
    case Family::Fact:
      return "fact";
    case Family::Expt:
      return "expt";
    case Family::ExptPows2:
      return "exptPows2";
  }
  return "";
}

Program family_program(Family f, const BigInt& n) {
  const std::string ns = n.str();
  std::string init = "1";
  std::string factor;
  switch (f) {
    case Family::Pows2:
      factor = "2";
      break;
    case Family::Fact:
      factor = "x[1]";
      break;
    case Family::Expt:
      factor = ns;
      break;
    case Family::ExptPows2:
      init = ns;
      factor = "x[0]";
      break;
  }
  return parse("(x[0] := " + init + "; (while (x[1] < " + ns + ") do (x[1] := (x[1] + 1); x[0] := (x[0] * " +
               factor + "))))");
}

}  // namespace imp
