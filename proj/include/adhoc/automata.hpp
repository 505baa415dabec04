#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adhoc/charset.hpp"
#include "adhoc/lang.hpp"

namespace adhoc {

// Looks up the definition of a named Ref that does not embed one.
using RefResolver = std::function<const Lang*(std::string_view name)>;

// Deterministic automaton over ASCII with a total transition function.
// Automata produced by compile/combine are minimal and canonically numbered
// (breadth-first from the start state, characters in ascending order), so two
// automata for the same language have identical tables.
class Dfa {
 public:
  using Row = std::array<std::int32_t, kAlphabetSize>;

  Dfa();  // the empty language
  Dfa(std::vector<Row> rows, std::vector<bool> accepting, int start);

  int start() const { return start_; }
  std::size_t size() const { return rows_.size(); }
  bool accepting(int state) const { return accepting_[state]; }
  int next(int state, unsigned char c) const { return rows_[state][c]; }
  const Row& row(int state) const { return rows_[state]; }

  // Linear in |w|. Non-ASCII input is never a member.
  bool member(std::string_view w) const;
  bool empty() const;

  // States from which an accepting state is reachable.
  std::size_t live_state_count() const;
  // For each state, length of the shortest path to acceptance (-1 if none).
  std::vector<int> distance_to_accept() const;

  Dfa minimized() const;
  Dfa complemented() const;

 private:
  std::vector<Row> rows_;
  std::vector<bool> accepting_;
  int start_ = 0;
};

enum class SetOp { Intersection, Union, Difference, SymmetricDifference };

// Thompson construction, subset construction, Hopcroft minimization.
// Refs without an embedded definition go through `resolve`; a Ref may recur
// only in tail position (right-linear), which keeps the language regular.
// Throws GrammarError on unresolved or non-tail recursive references.
Dfa compile(const Lang& lang, const RefResolver& resolve = {});

Dfa combine(const Dfa& a, const Dfa& b, SetOp op);

// Hopcroft-Karp union-find equivalence.
bool equivalent(const Dfa& a, const Dfa& b);

// Shortest (then lexicographically least) string in exactly one language.
std::optional<std::string> distinguishing_witness(const Dfa& a, const Dfa& b);

bool is_subset(const Dfa& a, const Dfa& b);

std::optional<std::string> shortest_member(const Dfa& d);

// Members of length <= max_length, shortest first, then lexicographic.
std::vector<std::string> enumerate_members(const Dfa& d, std::size_t max_length);

// State elimination, eliminating states with the fewest transitions first.
Lang to_lang(const Dfa& d);

// L(a) ∩ L(b). Returns an operand unchanged when it is contained in the
// other, otherwise the regex extracted from the product automaton.
Lang intersect(const Lang& a, const Lang& b);

}  // namespace adhoc
