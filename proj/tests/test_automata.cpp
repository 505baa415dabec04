#include <map>

#include "adhoc/automata.hpp"
#include "adhoc/models.hpp"
#include "support.hpp"

using namespace adhoc;

TEST_CASE("[automata] - compiled membership matches the naive matcher on random trees") {
  std::mt19937 rng(1234);
  const std::string alphabet = "ab,";
  const auto words = support::strings_upto(alphabet, 5);
  for (int round = 0; round < 200; ++round) {
    Lang l = support::random_lang(rng, "ab,", 4);
    Dfa d = compile(l);
    for (const auto& w : words) REQUIRE_MESSAGE(d.member(w) == support::naive_member(l, w), debug_string(l), " on ", w);
  }
}

TEST_CASE("[automata] - epsilon and empty") {
  Dfa eps = compile(Lang::epsilon());
  CHECK(eps.member(""));
  CHECK_FALSE(eps.member("a"));
  CHECK(eps.live_state_count() == 1);
  Dfa none = compile(Lang::empty());
  CHECK(none.empty());
  CHECK(none.live_state_count() == 0);
  CHECK(none.size() == 1);
  CHECK(Dfa().empty());
}

TEST_CASE("[automata] - non-ASCII input is never a member") {
  Dfa d = compile(Lang::anything());
  CHECK(d.member("abc"));
  CHECK_FALSE(d.member("\xC3\xA9"));
}

TEST_CASE("[automata] - minimal state count of the int language matches Myhill-Nerode classes") {
  // One representative per character class that int treats alike.
  const std::string reps = "0+_ a";
  const Dfa d = compile(int_py_language());
  const auto prefixes = support::strings_upto(reps, 5);
  const auto suffixes = support::strings_upto(reps, 4);
  std::map<std::vector<bool>, int> classes;
  for (const auto& p : prefixes) {
    std::vector<bool> signature;
    for (const auto& s : suffixes) signature.push_back(support::host_int(p + s));
    classes.emplace(signature, 0);
  }
  CHECK(classes.size() == d.size());
}

TEST_CASE("[automata] - compiled automata are pairwise distinguishable") {
  std::mt19937 rng(99);
  for (int round = 0; round < 40; ++round) {
    Dfa d = compile(support::random_lang(rng, "ab", 4));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j) {
        std::vector<Dfa::Row> rows;
        std::vector<bool> acc;
        for (std::size_t s = 0; s < d.size(); ++s) {
          rows.push_back(d.row(static_cast<int>(s)));
          acc.push_back(d.accepting(static_cast<int>(s)));
        }
        Dfa from_i(rows, acc, static_cast<int>(i));
        Dfa from_j(rows, acc, static_cast<int>(j));
        REQUIRE_FALSE(equivalent(from_i, from_j));
      }
  }
}

TEST_CASE("[automata] - canonical numbering makes equal languages produce equal tables") {
  Dfa a = compile(Lang::concat({Lang::chr('a'), Lang::star(Lang::chr('a'))}));
  Dfa b = compile(Lang::plus(Lang::chr('a')));
  REQUIRE(a.size() == b.size());
  for (std::size_t s = 0; s < a.size(); ++s) CHECK(a.row(static_cast<int>(s)) == b.row(static_cast<int>(s)));
}

TEST_CASE("[automata] - set operations agree with membership") {
  std::mt19937 rng(7);
  const auto words = support::strings_upto("ab", 5);
  for (int round = 0; round < 50; ++round) {
    Lang la = support::random_lang(rng, "ab", 3), lb = support::random_lang(rng, "ab", 3);
    Dfa a = compile(la), b = compile(lb);
    Dfa i = combine(a, b, SetOp::Intersection), u = combine(a, b, SetOp::Union);
    Dfa diff = combine(a, b, SetOp::Difference), x = combine(a, b, SetOp::SymmetricDifference);
    Dfa c = a.complemented();
    for (const auto& w : words) {
      bool ia = a.member(w), ib = b.member(w);
      REQUIRE(i.member(w) == (ia && ib));
      REQUIRE(u.member(w) == (ia || ib));
      REQUIRE(diff.member(w) == (ia && !ib));
      REQUIRE(x.member(w) == (ia != ib));
      REQUIRE(c.member(w) == !ia);
    }
    CHECK(is_subset(i, a));
    CHECK(equivalent(compile(intersect(la, lb)), i));
  }
}

TEST_CASE("[automata] - intersection examples") {
  Lang ab = Lang::star(Lang::cls(chars::of("ab")));
  Lang as = Lang::star(Lang::chr('a'));
  CHECK(equivalent(compile(intersect(ab, as)), compile(as)));
  CHECK(compile(intersect(ab, Lang::empty())).empty());
  Lang int_lang = int_py_language();
  CHECK(equivalent(compile(intersect(int_lang, without_occurrence(","))), compile(int_lang)));
}

TEST_CASE("[automata] - distinguishing witness is the shortlex-least string in exactly one language") {
  std::mt19937 rng(31);
  const auto words = support::strings_upto("ab", 6);
  for (int round = 0; round < 60; ++round) {
    Dfa a = compile(support::random_lang(rng, "ab", 3)), b = compile(support::random_lang(rng, "ab", 3));
    auto witness = distinguishing_witness(a, b);
    std::optional<std::string> brute;
    for (const auto& w : words)
      if (a.member(w) != b.member(w)) {
        brute = w;
        break;
      }
    if (brute) {
      REQUIRE(witness.has_value());
      CHECK(*witness == *brute);
    } else if (witness) {
      CHECK(witness->size() > 6);
    }
    CHECK(equivalent(a, b) == !witness.has_value());
  }
}

TEST_CASE("[automata] - enumeration equals brute-force filtering") {
  std::mt19937 rng(5);
  const std::string alphabet = ",ab";  // ascending, as enumeration orders by code
  for (int round = 0; round < 30; ++round) {
    Dfa d = compile(support::random_lang(rng, alphabet, 3));
    // Restrict to the alphabet so the brute force covers every member.
    d = combine(d, compile(Lang::star(Lang::cls(chars::of(alphabet)))), SetOp::Intersection);
    std::vector<std::string> brute;
    for (const auto& w : support::strings_upto(alphabet, 4))
      if (d.member(w)) brute.push_back(w);
    CHECK(enumerate_members(d, 4) == brute);
    auto shortest = shortest_member(d);
    CHECK(shortest.has_value() == !d.empty());
    if (shortest && !brute.empty()) CHECK(*shortest == brute.front());
  }
}

TEST_CASE("[automata] - state elimination preserves the language") {
  std::mt19937 rng(11);
  for (int round = 0; round < 60; ++round) {
    Dfa d = compile(support::random_lang(rng, "ab,", 4));
    CHECK(equivalent(compile(to_lang(d)), d));
  }
}

TEST_CASE("[automata] - tail recursion through resolved references") {
  // s → "a" | "a" "," s
  Lang body = Lang::alt({Lang::chr('a'), Lang::concat({Lang::chr('a'), Lang::chr(','), Lang::ref("s")})});
  RefResolver resolve = [&](std::string_view name) -> const Lang* { return name == "s" ? &body : nullptr; };
  Dfa d = compile(Lang::ref("s"), resolve);
  CHECK(d.member("a"));
  CHECK(d.member("a,a,a"));
  CHECK_FALSE(d.member("a,"));
  CHECK_FALSE(d.member(""));
}

TEST_CASE("[automata] - non-tail recursion and unresolved references are grammar errors") {
  Lang body = Lang::alt({Lang::chr('a'), Lang::concat({Lang::chr('('), Lang::ref("s"), Lang::chr(')')})});
  RefResolver resolve = [&](std::string_view name) -> const Lang* { return name == "s" ? &body : nullptr; };
  CHECK_THROWS_AS(compile(Lang::ref("s"), resolve), GrammarError);
  CHECK_THROWS_AS(compile(Lang::ref("missing"), resolve), GrammarError);
}
