#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "imp/program.hpp"

namespace imp {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& what);
  // Byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the fully parenthesized concrete syntax. Whitespace between tokens
// is ignored; the logical connectives may be written as the Unicode glyphs
// or as the ASCII aliases !, || and &&.
Program parse(std::string_view text);

// Canonical text; parse(render(p)) == p. Always emits the Unicode glyphs.
std::string render(const Program& p);
std::string render(const Program& p, NodeId id);

}  // namespace imp
