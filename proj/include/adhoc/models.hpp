#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "adhoc/automata.hpp"
#include "adhoc/ir.hpp"
#include "adhoc/lang.hpp"

// Builtin models. Each builtin has a concrete semantics (used only by the
// interpreter) and a backward transfer function (used only by inference)
// that maps a demand on its result to a demand on its variable operand.
namespace adhoc {

// Signed integer of unbounded size, stored as normalized decimal digits.
struct Integer {
  bool negative = false;
  std::string digits = "0";

  static Integer from(long long value);
  std::string str() const;
  friend bool operator==(const Integer&, const Integer&) = default;
};

using StrList = std::vector<std::string>;
using IntList = std::vector<Integer>;

struct Function {
  std::string builtin;
  friend bool operator==(const Function&, const Function&) = default;
};

using Value = std::variant<std::string, StrList, IntList, Integer, bool, Function>;

std::string value_text(const Value& value);

enum class RejectReason { BuiltinError, AssertFailed, IndexOutOfRange };

std::string_view reason_name(RejectReason reason);

struct Outcome {
  std::optional<Value> value;
  RejectReason reason = RejectReason::BuiltinError;
  std::string message;

  static Outcome ok(Value v) { return Outcome{std::move(v), RejectReason::BuiltinError, {}}; }
  static Outcome reject(RejectReason r, std::string m) { return Outcome{std::nullopt, r, std::move(m)}; }
  bool accepted() const { return value.has_value(); }
};

// Conjunction of `= k` and `>= k` constraints on a list length.
struct CountConstraint {
  std::size_t at_least = 0;
  std::optional<std::size_t> exactly;
  bool conflict = false;  // two different exact lengths were demanded

  CountConstraint meet(const CountConstraint& other) const;
  bool unsatisfiable() const { return conflict || (exactly && *exactly < at_least); }
  bool admits(std::size_t n) const;
  std::string str() const;
};

// What a value must satisfy for execution to reach `accept`.
struct Demand {
  ir::Shape shape = ir::Shape::Str;
  Lang lang = Lang::anything();    // Str
  std::optional<long long> equals;  // Int
  bool conflict = false;           // Int: two different values were demanded
  bool must_hold = false;          // Bool
  CountConstraint count;           // lists
  std::vector<Demand> element;     // lists: exactly one entry
  std::vector<std::pair<std::size_t, Demand>> at;  // lists: positional, ascending index

  static Demand top(ir::Shape shape);
  static Demand string(Lang lang);
  static Demand integer_equal(long long k);
  static Demand truth();

  const Demand& element_demand() const { return element.front(); }
  // Demand on the element at `index`: element demand met with any positional one.
  Demand at_index(std::size_t index) const;
  std::size_t positional_end() const { return at.empty() ? 0 : at.back().first + 1; }
  std::string str() const;
};

Demand meet(const Demand& a, const Demand& b);

// Decides whether a concrete value satisfies a demand. String demands are
// compiled to automata once and cached.
class DemandOracle {
 public:
  bool satisfies(const Value& value, const Demand& demand);
  bool member(const Lang& lang, std::string_view text);

 private:
  std::unordered_map<const void*, Dfa> cache_;
  std::vector<Lang> pinned_;
};

class Registry;

// Information about one operand while checking a call's signature.
struct OperandInfo {
  const ir::Operand* operand = nullptr;
  std::optional<ir::Shape> shape;  // for variables
};

struct TransferContext {
  std::span<const ir::Operand> args;
  ir::Shape operand_shape = ir::Shape::Str;  // shape of the variable operand
  Provenance where;
  const Registry* registry = nullptr;
  std::vector<Diagnostic>* notes = nullptr;
};

struct BuiltinModel {
  std::string name;
  std::string host;
  std::string summary;
  // Result shape, or a message describing the operand mismatch.
  std::function<std::variant<ir::Shape, std::string>(std::span<const OperandInfo>, const Registry&)> signature;
  std::function<Outcome(std::span<const Value* const>, const Registry&)> concrete;
  std::function<Demand(const Demand&, const TransferContext&)> transfer;
  // Characters used by the brute-force agreement check.
  std::string test_alphabet;
};

class Registry {
 public:
  void add(BuiltinModel model);
  const BuiltinModel* find(std::string_view name) const;
  const std::vector<BuiltinModel>& all() const { return models_; }

 private:
  std::vector<BuiltinModel> models_;
};

// split_py, strip_py, int_py, map, length, equals, index.
const Registry& builtins();

// Character classes that render as named nonterminals, in display order.
struct NamedSet {
  std::string name;
  std::string members;
};
std::span<const NamedSet> named_sets();
const NamedSet* named_set_for(const CharSet& set);

bool is_host_whitespace(char c);

std::optional<Integer> int_py_concrete(std::string_view text);
// int -> space* sign? digit ("_"? digit)* space*
Lang int_py_language(const std::vector<Provenance>& origin = {});

StrList split_py_concrete(std::string_view text, std::string_view sep);
Lang split_py_transfer(const Demand& list, std::string_view sep, const Provenance& where,
                       std::vector<Diagnostic>* notes);

std::string strip_py_concrete(std::string_view text);
Lang strip_py_transfer(const Lang& demand);

// Strings that contain no occurrence of `sep`.
Lang without_occurrence(std::string_view sep);

}  // namespace adhoc
