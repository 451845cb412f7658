#include "imp/bitstring.hpp"

#include <stdexcept>

namespace imp {

Bitstring::Bitstring(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
  }
}

// Algorithm: l = floor(log2(n + 1)), c = n - (2^l - 1), emit c in l bits.
// Equivalently, the binary expansion of n + 1 without its leading 1.
void append_nat_string(const BigInt& n, std::string& out) {
  if (n == 0) return;
  if (n < 0) throw std::invalid_argument("negative value has no canonical string");
  BigInt shifted = n + 1;
  const std::size_t l = boost::multiprecision::msb(shifted);
  const std::size_t start = out.size();
  out.resize(start + l);
  if (l < 64) {
    const auto c = static_cast<std::uint64_t>(shifted);
    for (std::size_t i = 0; i < l; ++i) out[start + i] = ((c >> (l - 1 - i)) & 1) ? '1' : '0';
    return;
  }
  for (std::size_t i = 0; i < l; ++i) {
    out[start + i] = boost::multiprecision::bit_test(shifted, l - 1 - i) ? '1' : '0';
  }
}

Bitstring nat_to_string(const BigInt& n) {
  Bitstring b;
  append_nat_string(n, b.bits_);
  return b;
}

BigInt string_to_nat(const Bitstring& b) {
  BigInt value = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    value <<= 1;
    if (b[i] == '1') value |= 1;
  }
  return value - 1;
}

}  // namespace imp
