#include "adhoc/charset.hpp"

namespace adhoc::chars {

CharSet all() { return CharSet{}.set(); }

CharSet of(std::string_view members) {
  CharSet set;
  for (char c : members) {
    auto code = static_cast<unsigned char>(c);
    if (code < kAlphabetSize) set.set(code);
  }
  return set;
}

CharSet range(unsigned char lo, unsigned char hi) {
  CharSet set;
  for (unsigned c = lo; c <= hi && c < kAlphabetSize; ++c) set.set(c);
  return set;
}

CharSet whitespace() { return of(" \t\n\v\f\r"); }
CharSet strip_whitespace() { return whitespace() | range(0x1c, 0x1f); }
CharSet digits() { return range('0', '9'); }
CharSet signs() { return of("+-"); }

std::string members(const CharSet& set) {
  std::string out;
  for (int c = 0; c < kAlphabetSize; ++c)
    if (set.test(c)) out.push_back(static_cast<char>(c));
  return out;
}

}  // namespace adhoc::chars
