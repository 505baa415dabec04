#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "adhoc/frontend.hpp"
#include "adhoc/grammar.hpp"
#include "adhoc/infer.hpp"
#include "doctest.h"

namespace support {

inline const std::string kIntList = "xs = map(int, s.split(','))\n";

inline const std::string kVectorLength =
    "import math\n"
    "\n"
    "def vector_length(s):\n"
    "  [x,y,z] = map(int, s.split(','))\n"
    "  return math.sqrt(x**2 + y**2 + z**3)\n";

// The reference grammar, transcribed by hand (recursive style).
inline const std::string kIntListReference =
    "s → int | int \",\" s\n"
    "int → space* sign? digit (\"_\"? digit)* space*\n"
    "digit → \"0\" | \"1\" | \"2\" | \"3\" | \"4\" | \"5\" | \"6\" | \"7\" | \"8\" | \"9\"\n"
    "sign → \"+\" | \"-\"\n"
    "space → \"␣\" | \"\\t\" | \"\\n\" | \"\\v\" | \"\\f\" | \"\\r\"\n";

inline const std::string kVectorLengthReference =
    "v → i \",\" i \",\" i\n"
    "i → w* (\"+\" | \"-\")? \"0\"..\"9\" (\"_\"? \"0\"..\"9\")* w*\n"
    "w → \" \" | \"\\t\" | \"\\n\" | \"\\v\" | \"\\f\" | \"\\r\"\n";

inline std::filesystem::path source_dir() { return ADHOC_SOURCE_DIR; }

inline std::string read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot read ", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline adhoc::ir::Program program(std::string_view source, const std::string& file = "t.mpy") {
  return adhoc::frontend::load_program(source, file);
}

inline adhoc::Grammar inferred(std::string_view source, adhoc::Style style = adhoc::Style::Repetition) {
  return adhoc::to_grammar(adhoc::infer(program(source)), style);
}

inline adhoc::Dfa dfa_of(std::string_view ebnf) { return adhoc::compile_dfa(adhoc::parse_ebnf(ebnf)); }

// Every string over `alphabet` with length <= max_length, shortest first.
inline std::vector<std::string> strings_upto(std::string_view alphabet, std::size_t max_length) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

// Host int() on ASCII input, written from the documented rules: optional
// surrounding whitespace, one optional sign, digits with single underscores
// strictly between digits.
inline bool host_int(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || (c >= '\t' && c <= '\r'); };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty() || s.front() == '_' || s.back() == '_') return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '_') {
      if (s[i + 1] == '_') return false;
    } else if (s[i] < '0' || s[i] > '9') {
      return false;
    }
  }
  return true;
}

inline std::vector<std::string> host_split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t at = s.find(sep, pos);
    if (at == std::string_view::npos) break;
    out.emplace_back(s.substr(pos, at - pos));
    pos = at + sep.size();
  }
  out.emplace_back(s.substr(pos));
  return out;
}

// End positions of matches of `lang` in `w` starting at `from`, by direct
// recursion on the tree. Exponential but independent of the automata code.
inline std::set<std::size_t> ends(const adhoc::Lang& lang, std::string_view w, std::size_t from) {
  using adhoc::LangKind;
  std::set<std::size_t> out;
  switch (lang.kind()) {
    case LangKind::Empty: break;
    case LangKind::Epsilon: out.insert(from); break;
    case LangKind::Class:
      if (from < w.size() && static_cast<unsigned char>(w[from]) < 128 &&
          lang.chars()[static_cast<unsigned char>(w[from])])
        out.insert(from + 1);
      break;
    case LangKind::Literal:
      if (w.substr(from, lang.text().size()) == lang.text()) out.insert(from + lang.text().size());
      break;
    case LangKind::Concat: {
      std::set<std::size_t> at{from};
      for (const auto& item : lang.items()) {
        std::set<std::size_t> next;
        for (std::size_t p : at) next.merge(ends(item, w, p));
        at = std::move(next);
      }
      out = std::move(at);
      break;
    }
    case LangKind::Union:
      for (const auto& item : lang.items()) out.merge(ends(item, w, from));
      break;
    case LangKind::Optional:
      out = ends(lang.item(), w, from);
      out.insert(from);
      break;
    case LangKind::Star:
    case LangKind::Plus: {
      std::set<std::size_t> frontier = ends(lang.item(), w, from);
      if (lang.kind() == LangKind::Star) out.insert(from);
      while (!frontier.empty()) {
        std::set<std::size_t> next;
        for (std::size_t p : frontier)
          if (out.insert(p).second) next.merge(ends(lang.item(), w, p));
        frontier = std::move(next);
      }
      break;
    }
    case LangKind::Repeat: {
      std::set<std::size_t> at{from};
      for (int i = 0; i < lang.count(); ++i) {
        std::set<std::size_t> next;
        for (std::size_t p : at) next.merge(ends(lang.item(), w, p));
        at = std::move(next);
      }
      out = std::move(at);
      break;
    }
    case LangKind::Ref:
      REQUIRE(lang.definition() != nullptr);
      out = ends(*lang.definition(), w, from);
      break;
  }
  return out;
}

inline bool naive_member(const adhoc::Lang& lang, std::string_view w) { return ends(lang, w, 0).count(w.size()) > 0; }

// Random regex tree over `alphabet`, every operator represented.
inline adhoc::Lang random_lang(std::mt19937& rng, std::string_view alphabet, int depth) {
  using adhoc::Lang;
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  if (depth <= 0 || pick(4) == 0) {
    switch (pick(6)) {
      case 0: return Lang::epsilon();
      case 1: {
        adhoc::CharSet set;
        for (char c : alphabet)
          if (pick(2)) set.set(static_cast<unsigned char>(c));
        return Lang::cls(set);
      }
      case 2: {
        std::string text;
        for (int i = 0, n = 1 + pick(2); i < n; ++i) text += alphabet[pick(static_cast<int>(alphabet.size()))];
        return Lang::literal(text);
      }
      default: return Lang::chr(alphabet[pick(static_cast<int>(alphabet.size()))]);
    }
  }
  switch (pick(7)) {
    case 0:
    case 1: return Lang::concat({random_lang(rng, alphabet, depth - 1), random_lang(rng, alphabet, depth - 1)});
    case 2: return Lang::alt({random_lang(rng, alphabet, depth - 1), random_lang(rng, alphabet, depth - 1)});
    case 3: return Lang::star(random_lang(rng, alphabet, depth - 1));
    case 4: return Lang::plus(random_lang(rng, alphabet, depth - 1));
    case 5: return Lang::opt(random_lang(rng, alphabet, depth - 1));
    default: return Lang::repeat(random_lang(rng, alphabet, depth - 1), 2 + pick(2));
  }
}

// Compares `actual` with tests/golden/<name>. ADHOC_UPDATE_GOLDEN=1 rewrites it.
inline void check_golden(const std::string& name, const std::string& actual) {
  auto path = source_dir() / "tests" / "golden" / name;
  if (std::getenv("ADHOC_UPDATE_GOLDEN")) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << actual;
  }
  CHECK_MESSAGE(read(path) == actual, "golden mismatch: ", name);
}

}  // namespace support
