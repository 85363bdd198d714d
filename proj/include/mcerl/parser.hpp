#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcerl/syntax.hpp"

namespace mcerl {

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets into the input
  std::size_t end = 0;
};

struct ParseError {
  SourceSpan span;
  std::string message;
  std::vector<std::string> expected;
};

using ParseResult = std::variant<ExprPtr, ParseError>;

// Total: every input yields an expression or a ParseError, never a crash.
ParseResult parse(std::string_view src);

inline bool parse_ok(const ParseResult& r) { return r.index() == 0; }

std::string format_parse_error(const ParseError& err);

}  // namespace mcerl
