#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adhoc/automata.hpp"
#include "adhoc/infer.hpp"
#include "adhoc/lang.hpp"

namespace adhoc {

struct Production {
  std::string name;
  Lang body;  // refers to other productions through name-only Refs
  std::vector<Provenance> origin;
};

// G = (V, Σ, P, S) with Σ fixed to ASCII. Productions are kept in display
// order, start first. A production may refer to itself, or to one that leads
// back to it, only in tail position, so every grammar stays regular.
struct Grammar {
  std::string start;
  std::vector<Production> productions;

  const Production* find(std::string_view name) const;
  RefResolver resolver() const;
  // Undefined start or references, duplicate names, non-tail recursion.
  std::vector<Diagnostic> validate() const;
};

enum class Style {
  Repetition,  // s → int ("," int)*
  Recursive,   // s → int | int "," s
};

// One nonterminal per named sublanguage; character classes that equal a
// named set (digit, sign, space) become references to it.
Grammar to_grammar(const LanguageModel& model, Style style = Style::Repetition);

// A single production `name → body`; nested embedded Refs become productions.
Grammar grammar_of(const std::string& name, const Lang& body, const std::vector<Provenance>& origin = {});

// Minimal DFA for L(g). Throws GrammarError for ill-formed grammars.
Dfa compile_dfa(const Grammar& g);

struct Equivalence {
  bool equal = true;
  // Shortest (then lexicographically least) string in exactly one language.
  std::optional<std::string> witness;
  bool witness_in_first = false;
};

Equivalence equivalent(const Grammar& a, const Grammar& b);
Equivalence compare(const Dfa& a, const Dfa& b);

struct Membership {
  bool member = false;
  std::vector<Diagnostic> diagnostics;
};

// Non-ASCII input is never a member and yields a diagnostic.
Membership member(const Dfa& d, std::string_view w);

// Deterministic sentence generation. Alternatives are chosen uniformly among
// those that can still derive a string; Star/Plus/Optional repeat with
// probability 1/2 up to max_rep. Throws GrammarError("language is empty").
std::vector<std::string> generate(const Grammar& g, std::uint64_t seed, int max_rep, std::size_t count);

// Every member of length <= k, shortest first, then lexicographic.
std::vector<std::string> enumerate_shortest(const Grammar& g, std::size_t k);

// Renderers. See docs/formats.md.
std::string to_ebnf(const Grammar& g);
Grammar parse_ebnf(std::string_view text, const std::string& file = "<ebnf>");
std::string to_regex(const Grammar& g);
std::string to_json(const Grammar& g);
Grammar grammar_from_json(std::string_view text, const std::string& file = "<json>");
std::string to_railroad_svg(const Grammar& g);

// Renders one production body in EBNF notation.
std::string ebnf_body(const Lang& body);

}  // namespace adhoc
