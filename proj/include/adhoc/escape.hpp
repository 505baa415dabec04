#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace adhoc {

// Line-safe escaping used by fuzz output, `check --stdin`, truth tables and
// alphabet declarations. Space becomes the visible-space glyph U+2423,
// backslash and control characters become C-style escapes (\t, \x1b, ...).
std::string escape_line(std::string_view text);

// Inverse of escape_line. Returns nullopt on a malformed escape.
std::optional<std::string> unescape_line(std::string_view text);

// Double-quoted rendering for messages: "a,b" with the same escapes.
std::string quoted(std::string_view text);

}  // namespace adhoc
