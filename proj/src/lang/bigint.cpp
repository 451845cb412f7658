#include "imp/bigint.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace imp {

std::size_t decimal_digits(const BigInt& value) {
  if (value < 10) return 1;
  if (value <= std::numeric_limits<std::uint64_t>::max()) {
    auto v = static_cast<std::uint64_t>(value);
    std::size_t d = 0;
    while (v != 0) {
      v /= 10;
      ++d;
    }
    return d;
  }
  return value.str().size();
}

BigInt parse_natural(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("not a natural number: '" + std::string(text) + "'");
    }
  }
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = text.find_first_not_of('0');
  return first == std::string_view::npos ? BigInt(0) : BigInt(std::string(text.substr(first)));
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_natural(text.substr(0, slash));
    BigInt den = parse_natural(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  }
  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    bool negative = !exp_text.empty() && exp_text.front() == '-';
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || exp_text.size() > 6) throw bad();
    exponent = static_cast<long long>(parse_natural(exp_text));
    if (negative) exponent = -exponent;
  }
  std::string digits;
  long long scale = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    scale = static_cast<long long>(mantissa.size() - dot - 1);
  } else {
    digits = std::string(mantissa);
  }
  if (digits.empty()) throw bad();
  BigInt num;
  try {
    num = parse_natural(digits);
  } catch (const std::invalid_argument&) {
    throw bad();
  }
  long long shift = exponent - scale;
  BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
  return shift < 0 ? Rational(num, pow10) : Rational(num * pow10);
}

std::optional<std::uint64_t> to_u64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(value);
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace imp
