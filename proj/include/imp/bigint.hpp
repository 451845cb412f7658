#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace imp {

// Exact naturals for counts, positions, numerals and register contents.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Number of decimal digits of a nonnegative value; 0 has one digit.
std::size_t decimal_digits(const BigInt& value);

// Parses a nonnegative decimal integer without sign or separators.
// Throws std::invalid_argument on anything else.
BigInt parse_natural(std::string_view text);

// Accepts "p/q", "d.ddd" and "d.ddde-k" forms. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::optional<std::uint64_t> to_u64(const BigInt& value);

std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

}  // namespace imp
