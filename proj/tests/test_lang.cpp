#include "adhoc/automata.hpp"
#include "adhoc/charset.hpp"
#include "adhoc/escape.hpp"
#include "adhoc/lang.hpp"
#include "support.hpp"

using namespace adhoc;

TEST_CASE("[lang] - constructors normalize units and zeros") {
  Lang a = Lang::chr('a');
  CHECK(Lang::concat({a, Lang::epsilon()}) == a);
  CHECK(Lang::concat({a, Lang::empty()}).kind() == LangKind::Empty);
  CHECK(Lang::concat({}).kind() == LangKind::Epsilon);
  CHECK(Lang::alt({a, Lang::empty()}) == a);
  CHECK(Lang::alt({}).kind() == LangKind::Empty);
  CHECK(Lang::star(Lang::star(a)) == Lang::star(a));
  CHECK(Lang::star(Lang::epsilon()).kind() == LangKind::Epsilon);
  CHECK(Lang::opt(Lang::plus(a)) == Lang::star(a));
  CHECK(Lang::repeat(a, 1) == a);
  CHECK(Lang::repeat(a, 0).kind() == LangKind::Epsilon);
}

TEST_CASE("[lang] - alternatives of single characters merge into one class") {
  Lang u = Lang::alt({Lang::chr('a'), Lang::chr('b'), Lang::cls(chars::of("c"))});
  REQUIRE(u.kind() == LangKind::Class);
  CHECK(u.chars() == chars::of("abc"));
}

TEST_CASE("[lang] - nested concatenations and unions flatten") {
  Lang a = Lang::literal("ab"), b = Lang::literal("cd"), c = Lang::literal("ef");
  CHECK(Lang::concat({Lang::concat({a, b}), c}).items().size() == 3);
  CHECK(Lang::alt({Lang::alt({a, b}), c, a}).items().size() == 3);
}

TEST_CASE("[lang] - structural equality ignores provenance") {
  Lang d = Lang::chr('x');
  Lang r1 = Lang::ref("x", d, {Provenance{"a.mpy", 1, 1, 1}});
  Lang r2 = Lang::ref("x", d, {Provenance{"b.mpy", 9, 9, 9}});
  CHECK(r1 == r2);
  CHECK_FALSE(Lang::ref("x") == Lang::ref("y"));
}

TEST_CASE("[lang] - anything is the full star") {
  CHECK(Lang::anything().is_anything());
  CHECK_FALSE(Lang::star(Lang::cls(chars::digits())).is_anything());
}

TEST_CASE("[lang] - character set helpers") {
  CHECK(chars::members(chars::whitespace()) == "\t\n\v\f\r ");
  CHECK(chars::members(chars::digits()) == "0123456789");
  CHECK(chars::members(chars::signs()) == "+-");
  CHECK(chars::range('a', 'c') == chars::of("cab"));
  CHECK(chars::all().count() == 128);
  CHECK((chars::strip_whitespace() & ~chars::whitespace()) == chars::range(0x1c, 0x1f));
  CHECK_FALSE(chars::is_ascii("caf\xC3\xA9"));
}

TEST_CASE("[lang] - line escaping round-trips every byte") {
  std::string all;
  for (int c = 0; c < 256; ++c) all.push_back(static_cast<char>(c));
  std::string escaped = escape_line(all);
  CHECK(escaped.find('\n') == std::string::npos);
  CHECK(escaped.find(' ') == std::string::npos);
  CHECK(unescape_line(escaped) == all);
  CHECK(escape_line("+01_2,3_0_4 ") == "+01_2,3_0_4␣");
  CHECK(unescape_line("a\\sb") == "a b");
  CHECK_FALSE(unescape_line("bad\\q").has_value());
  CHECK_FALSE(unescape_line("\\x4").has_value());
  CHECK(quoted("a b\t") == "\"a␣b\\t\"");
}

TEST_CASE("[lang] - debug strings are stable") {
  Lang l = Lang::concat({Lang::chr('a'), Lang::star(Lang::literal("bc"))});
  CHECK(debug_string(l) == debug_string(Lang::concat({Lang::chr('a'), Lang::star(Lang::literal("bc"))})));
  CHECK(node_count(l) >= 3);
}
