#include <regex>

#include "adhoc/corpus.hpp"
#include "adhoc/frontend.hpp"
#include "adhoc/grammar.hpp"
#include "support.hpp"
#include "json.hpp"

using namespace adhoc;

namespace {

std::vector<Grammar> corpus_grammars() {
  std::vector<Grammar> out;
  for (const auto& entry : corpus::discover(support::source_dir() / "corpus")) {
    auto model = infer(frontend::load_program(support::read(entry.source), entry.source.string()));
    out.push_back(to_grammar(model, Style::Repetition));
    out.push_back(to_grammar(model, Style::Recursive));
  }
  return out;
}

std::vector<Grammar> random_grammars(std::size_t n) {
  std::mt19937 rng(7);
  std::vector<Grammar> out;
  while (out.size() < n) out.push_back(grammar_of("s", support::random_lang(rng, "a,\" \\\t", 4)));
  return out;
}

// Minimal XML check: every tag closes in order and entities are known.
bool well_formed_xml(std::string_view text) {
  std::vector<std::string> open;
  std::size_t i = 0;
  while ((i = text.find_first_of("<&", i)) != std::string_view::npos) {
    if (text[i] == '&') {
      std::size_t end = text.find(';', i);
      if (end == std::string_view::npos) return false;
      std::string entity(text.substr(i + 1, end - i - 1));
      if (entity != "amp" && entity != "lt" && entity != "gt" && entity != "quot" && entity != "apos" &&
          entity.rfind("#", 0) != 0)
        return false;
      i = end;
      continue;
    }
    std::size_t end = text.find('>', i);
    if (end == std::string_view::npos) return false;
    std::string_view tag = text.substr(i + 1, end - i - 1);
    i = end;
    if (tag.starts_with('?') || tag.starts_with('!')) continue;
    if (tag.ends_with('/')) continue;
    std::string name(tag.substr(tag.starts_with('/') ? 1 : 0));
    name = name.substr(0, name.find_first_of(" \t\n"));
    if (tag.starts_with('/')) {
      if (open.empty() || open.back() != name) return false;
      open.pop_back();
    } else {
      open.push_back(name);
    }
  }
  return open.empty();
}

}  // namespace

TEST_CASE("[render] - EBNF of the one-liner") {
  std::string text = to_ebnf(support::inferred(support::kIntList));
  CHECK(text ==
        "s → int (\",\" int)*\n"
        "int → space* sign? digit (\"_\"? digit)* space*\n"
        "digit → \"0\" | \"1\" | \"2\" | \"3\" | \"4\" | \"5\" | \"6\" | \"7\" | \"8\" | \"9\"\n"
        "sign → \"+\" | \"-\"\n"
        "space → \"␣\" | \"\\t\" | \"\\n\" | \"\\v\" | \"\\f\" | \"\\r\"\n");
}

TEST_CASE("[render] - EBNF round-trips on corpus and random grammars") {
  auto grammars = corpus_grammars();
  for (auto& g : random_grammars(100)) grammars.push_back(std::move(g));
  for (const auto& g : grammars) {
    std::string text = to_ebnf(g);
    Grammar back = parse_ebnf(text);
    REQUIRE_MESSAGE(equivalent(g, back).equal, text);
    CHECK_MESSAGE(to_ebnf(back) == text, text);
  }
}

TEST_CASE("[render] - EBNF accepts ASCII spellings") {
  Grammar a = parse_ebnf("s ::= d+ (',' d+)* ;\nd ::= '0' .. '9' ;\n");
  Grammar b = parse_ebnf("s → d+ (\",\" d+)*\nd → \"0\" .. \"9\"\n");
  CHECK(equivalent(a, b).equal);
  CHECK(compile_dfa(parse_ebnf("s → any - \",\"\n")).member("a"));
  CHECK_FALSE(compile_dfa(parse_ebnf("s → any - \",\"\n")).member(","));
}

TEST_CASE("[render] - malformed EBNF is a syntax error with a position") {
  for (const char* bad : {"s → (\"a\"\n", "s → \"a\n", "→ \"a\"\n", "s → \"a\" |\n", "s → \"\\q\"\n", ""}) {
    try {
      parse_ebnf(bad, "g.ebnf");
      FAIL("accepted: ", bad);
    } catch (const SyntaxError& e) {
      REQUIRE_FALSE(e.diagnostics().empty());
      CHECK(e.diagnostics().front().where.file == "g.ebnf");
      CHECK(e.diagnostics().front().where.line >= 1);
    }
  }
}

TEST_CASE("[render] - regex agrees with the grammar under std::regex") {
  auto grammars = corpus_grammars();
  for (auto& g : random_grammars(60)) grammars.push_back(std::move(g));
  for (std::size_t i = 0; i < grammars.size(); ++i) {
    const Grammar& g = grammars[i];
    std::string pattern = to_regex(g);
    std::regex re(pattern, std::regex::ECMAScript);
    Dfa d = compile_dfa(g);
    for (const auto& w : support::strings_upto(i % 2 ? "1, \t\"" : "a,1 ", 4))
      REQUIRE_MESSAGE(std::regex_match(w, re) == d.member(w), pattern, " on ", quoted(w));
  }
  CHECK(to_regex(grammar_of("s", Lang::chr('a'))) == "a");
  CHECK(to_regex(grammar_of("s", Lang::opt(Lang::repeat(Lang::chr('a'), 3)))) == "(?:a{3})?");
}

TEST_CASE("[render] - JSON round-trips and follows the schema") {
  for (const auto& g : corpus_grammars()) {
    std::string text = to_json(g);
    auto doc = nlohmann::json::parse(text);
    CHECK(doc["version"] == 1);
    CHECK(doc["start"] == g.start);
    CHECK(doc["alphabet"] == "ascii");
    REQUIRE(doc["productions"].is_object());
    CHECK(doc["productions"].size() == g.productions.size());
    CHECK(doc["provenance"].is_object());
    Grammar back = grammar_from_json(text);
    CHECK(equivalent(g, back).equal);
    CHECK(to_json(back) == text);
  }
  CHECK_THROWS_AS(grammar_from_json("{\"version\": 2}"), SyntaxError);
  CHECK_THROWS_AS(grammar_from_json("not json"), SyntaxError);
}

TEST_CASE("[render] - railroad SVG is stable and well-formed") {
  std::string svg = to_railroad_svg(support::inferred(support::kIntList));
  CHECK(svg == to_railroad_svg(support::inferred(support::kIntList)));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(well_formed_xml(svg));
  for (const char* name : {"s", "int", "digit", "sign", "space"})
    CHECK(svg.find(std::string("id=\"") + name + "\"") != std::string::npos);
  support::check_golden("int_list.svg", svg);
  for (const auto& g : corpus_grammars()) CHECK(well_formed_xml(to_railroad_svg(g)));
  for (const auto& g : random_grammars(30)) CHECK(well_formed_xml(to_railroad_svg(g)));
}
