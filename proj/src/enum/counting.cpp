#include <limits>

#include "imp/enumeration.hpp"

namespace imp {

namespace {

std::size_t idx(Category c) { return static_cast<std::size_t>(c); }
std::size_t idx(Kind k) { return static_cast<std::size_t>(k); }

BigInt convolve(const std::vector<BigInt>& f, const std::vector<BigInt>& g, std::size_t m) {
  BigInt s = 0;
  for (std::size_t a = 0; a <= m; ++a) s += f[a] * g[m - a];
  return s;
}

}  // namespace

CountTable::CountTable(std::size_t max_length) : max_length_(max_length) {
  const std::size_t n = max_length + 1;
  for (auto& v : counts_) v.assign(n, 0);
  for (auto& v : alternatives_) v.assign(n, 0);
  cumulative_.assign(n, 0);

  auto& num = counts_[idx(Category::Numeral)];
  auto& var = counts_[idx(Category::Var)];
  auto& ar = counts_[idx(Category::Arith)];
  auto& bo = counts_[idx(Category::Bool)];
  auto& pr = counts_[idx(Category::Program)];
  auto alt = [&](Kind k) -> std::vector<BigInt>& { return alternatives_[idx(k)]; };

  // Numerals: 10 one-digit numerals, 9 * 10^(d-1) with d >= 2 digits.
  BigInt power = 1;
  for (std::size_t d = 1; d < n; ++d) {
    num[d] = d == 1 ? BigInt(10) : 9 * power;
    power *= 10;
    if (d + 1 < n) var[d + 1] = num[d];
  }

  for (std::size_t len = 1; len < n; ++len) {
    const std::size_t m = len - 1;

    alt(Kind::Num)[len] = num[len];
    alt(Kind::Var)[len] = var[len];
    const BigInt aa = convolve(ar, ar, m);
    alt(Kind::Add)[len] = alt(Kind::Sub)[len] = alt(Kind::Mul)[len] = aa;
    ar[len] = num[len] + var[len] + 3 * aa;

    alt(Kind::True)[len] = alt(Kind::False)[len] = len == 1 ? 1 : 0;
    alt(Kind::Eq)[len] = alt(Kind::Lt)[len] = aa;
    alt(Kind::Not)[len] = bo[m];
    const BigInt bb = convolve(bo, bo, m);
    alt(Kind::Or)[len] = alt(Kind::And)[len] = bb;
    bo[len] = 2 * alt(Kind::True)[len] + 2 * aa + bo[m] + 2 * bb;

    alt(Kind::Skip)[len] = len == 1 ? 1 : 0;
    alt(Kind::Assign)[len] = convolve(var, ar, m);
    alt(Kind::Seq)[len] = convolve(pr, pr, m);
    // Seq counts at length j + 1 are exactly the pairs of programs with
    // total length j, which is what each branch pair of an if needs.
    BigInt ifs = 0;
    for (std::size_t b = 1; b <= m; ++b) ifs += bo[b] * alt(Kind::Seq)[m - b + 1];
    alt(Kind::If)[len] = ifs;
    alt(Kind::While)[len] = convolve(bo, pr, m);
    pr[len] = alt(Kind::Skip)[len] + alt(Kind::Assign)[len] + alt(Kind::Seq)[len] +
              alt(Kind::If)[len] + alt(Kind::While)[len];
    cumulative_[len] = cumulative_[m] + pr[len];
  }

  const BigInt word_max = std::numeric_limits<std::uint64_t>::max();
  auto fits = [&](std::size_t len) {
    for (const auto& v : counts_)
      if (v[len] > word_max) return false;
    for (const auto& v : alternatives_)
      if (v[len] > word_max) return false;
    return cumulative_[len] <= word_max;
  };
  while (word_limit_ + 1 < n && fits(word_limit_ + 1)) ++word_limit_;

  const std::size_t w = word_limit_ + 1;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    counts_u64_[c].resize(w);
    for (std::size_t len = 0; len < w; ++len) counts_u64_[c][len] = static_cast<std::uint64_t>(counts_[c][len]);
  }
  for (std::size_t k = 0; k < alternatives_.size(); ++k) {
    alternatives_u64_[k].resize(w);
    for (std::size_t len = 0; len < w; ++len) {
      alternatives_u64_[k][len] = static_cast<std::uint64_t>(alternatives_[k][len]);
    }
  }
  cumulative_u64_.resize(w);
  for (std::size_t len = 0; len < w; ++len) cumulative_u64_[len] = static_cast<std::uint64_t>(cumulative_[len]);
}

void CountTable::check(std::size_t len) const {
  if (len > max_length_) {
    throw OutOfRange("length " + std::to_string(len) + " exceeds the count table limit " +
                     std::to_string(max_length_));
  }
}

const BigInt& CountTable::count(Category c, std::size_t len) const {
  check(len);
  return counts_[idx(c)][len];
}

const BigInt& CountTable::cumulative(std::size_t len) const {
  check(len);
  return cumulative_[len];
}

const BigInt& CountTable::alternative(Kind k, std::size_t len) const {
  check(len);
  return alternatives_[idx(k)][len];
}

std::uint64_t CountTable::count_u64(Category c, std::size_t len) const {
  return len <= word_limit_ ? counts_u64_[idx(c)][len] : throw OutOfRange("count exceeds 64 bits");
}

std::uint64_t CountTable::alternative_u64(Kind k, std::size_t len) const {
  return len <= word_limit_ ? alternatives_u64_[idx(k)][len] : throw OutOfRange("count exceeds 64 bits");
}

std::uint64_t CountTable::cumulative_u64(std::size_t len) const {
  return len <= word_limit_ ? cumulative_u64_[len] : throw OutOfRange("count exceeds 64 bits");
}

std::size_t CountTable::canonical_length(const BigInt& k) const {
  if (k < 0) throw OutOfRange("negative position");
  for (std::size_t len = 0; len <= max_length_; ++len) {
    if (cumulative_[len] > k) return len;
  }
  throw OutOfRange("position beyond programs of length " + std::to_string(max_length_));
}

std::size_t CountTable::canonical_length(std::uint64_t k) const {
  for (std::size_t len = 0; len <= word_limit_; ++len) {
    if (cumulative_u64_[len] > k) return len;
  }
  return canonical_length(BigInt(k));
}

const CountTable& CountTable::shared() {
  static const CountTable table;
  return table;
}

BigInt count_programs(std::size_t len) {
  const auto& t = CountTable::shared();
  if (len > t.max_length()) return CountTable(len).programs(len);
  return t.programs(len);
}

BigInt cumulative_count(std::size_t len) {
  const auto& t = CountTable::shared();
  if (len > t.max_length()) return CountTable(len).cumulative(len);
  return t.cumulative(len);
}

}  // namespace imp
