#pragma once

#include <bitset>
#include <string>
#include <string_view>

namespace adhoc {

// The alphabet is ASCII (codes 0-127).
inline constexpr int kAlphabetSize = 128;

using CharSet = std::bitset<kAlphabetSize>;

namespace chars {

CharSet all();
CharSet of(std::string_view members);
CharSet range(unsigned char lo, unsigned char hi);

// Whitespace accepted around integers and removed by strip: space \t \n \v \f \r.
CharSet whitespace();
// What str.strip() removes: whitespace plus the separators \x1c-\x1f.
CharSet strip_whitespace();
CharSet digits();
CharSet signs();

// Members in ascending code order.
std::string members(const CharSet& set);

inline bool is_ascii(std::string_view text) {
  for (char c : text)
    if (static_cast<unsigned char>(c) >= kAlphabetSize) return false;
  return true;
}

}  // namespace chars
}  // namespace adhoc
