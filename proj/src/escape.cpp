#include "adhoc/escape.hpp"

#include <cstdio>

namespace adhoc {

namespace {

constexpr std::string_view kVisibleSpace = "\xE2\x90\xA3";  // U+2423

void append_escaped(std::string& out, char c) {
  switch (c) {
    case ' ': out += kVisibleSpace; return;
    case '\\': out += "\\\\"; return;
    case '\t': out += "\\t"; return;
    case '\n': out += "\\n"; return;
    case '\v': out += "\\v"; return;
    case '\f': out += "\\f"; return;
    case '\r': out += "\\r"; return;
    default: break;
  }
  auto code = static_cast<unsigned char>(c);
  if (code < 0x20 || code >= 0x7f) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02x", code);
    out += buf;
  } else {
    out.push_back(c);
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string escape_line(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) append_escaped(out, c);
  return out;
}

std::optional<std::string> unescape_line(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, kVisibleSpace.size()) == kVisibleSpace) {
      out.push_back(' ');
      i += kVisibleSpace.size() - 1;
      continue;
    }
    char c = text[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (++i >= text.size()) return std::nullopt;
    switch (text[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'v': out.push_back('\v'); break;
      case 'f': out.push_back('\f'); break;
      case 'r': out.push_back('\r'); break;
      case 's': out.push_back(' '); break;
      case 'x': {
        if (i + 2 >= text.size()) return std::nullopt;
        int hi = hex_value(text[i + 1]);
        int lo = hex_value(text[i + 2]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        break;
      }
      default: return std::nullopt;
    }
  }
  return out;
}

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"')
      out += "\\\"";
    else
      append_escaped(out, c);
  }
  out += '"';
  return out;
}

}  // namespace adhoc
