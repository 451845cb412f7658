#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include "imp/bigint.hpp"

namespace imp {

// Finite binary string. Ordering is the canonical one: shorter strings
// first, equal lengths compared lexicographically.
class Bitstring {
 public:
  Bitstring() = default;
  // Throws std::invalid_argument unless every character is '0' or '1'.
  explicit Bitstring(std::string_view bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char operator[](std::size_t i) const { return bits_[i]; }

  const std::string& str() const { return bits_; }

  Bitstring& operator+=(const Bitstring& other) {
    bits_ += other.bits_;
    return *this;
  }
  friend Bitstring operator+(Bitstring lhs, const Bitstring& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend std::strong_ordering operator<=>(const Bitstring& a, const Bitstring& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.bits_.compare(b.bits_) <=> 0;
  }

 private:
  friend Bitstring nat_to_string(const BigInt& n);
  std::string bits_;
};

// n-th string of the canonical order; nat_to_string(0) is the empty string.
Bitstring nat_to_string(const BigInt& n);
// Appends nat_to_string(n) to out without building a temporary.
void append_nat_string(const BigInt& n, std::string& out);
// Inverse: 2^|b| - 1 + value(b).
BigInt string_to_nat(const Bitstring& b);

}  // namespace imp

template <>
struct std::hash<imp::Bitstring> {
  std::size_t operator()(const imp::Bitstring& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
