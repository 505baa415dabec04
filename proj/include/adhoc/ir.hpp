#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adhoc/lang.hpp"
#include "adhoc/provenance.hpp"

// The parsing IR: a let-chain in A-normal form over builtin string models.
//
//   let vector_length = fun(s : String {*}) {
//     let v1 = split_py "," s in
//     let v2 = map int_py v1 in
//     let v3 = length v2 in
//     let v4 = equals 3 v3 in
//     assert v4 in
//     accept
//   }
//
// `*` is the input-refinement hole that inference solves.
namespace adhoc::ir {

enum class Shape { Str, StrList, IntList, Int, Bool, Function };

std::string_view shape_name(Shape shape);

struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
};
struct StrLit {
  std::string value;
  friend bool operator==(const StrLit&, const StrLit&) = default;
};
struct IntLit {
  long long value = 0;
  friend bool operator==(const IntLit&, const IntLit&) = default;
};
// A builtin passed as a value, e.g. the `int_py` in `map int_py v1`.
struct FuncRef {
  std::string builtin;
  friend bool operator==(const FuncRef&, const FuncRef&) = default;
};

using Operand = std::variant<Var, StrLit, IntLit, FuncRef>;

struct Call {
  std::string builtin;
  std::vector<Operand> args;
  Provenance where;
};

struct Let {
  std::string var;
  Call call;
  Provenance where;
};

struct Assert {
  std::string var;
  Provenance where;
};

using Step = std::variant<Let, Assert>;

struct Hole {};

struct Program {
  std::string name;
  std::string param;
  // Hole until inference solves it.
  std::variant<Hole, Lang> refinement = Hole{};
  std::vector<Step> steps;
  Provenance where;
  Provenance accept_where;

  bool solved() const { return std::holds_alternative<Lang>(refinement); }
};

// Structural equality, ignoring provenance.
bool same_program(const Program& a, const Program& b);

// Empty iff scoping, arity and shape rules hold.
std::vector<Diagnostic> well_formed(const Program& program);

// Shape of every bound variable (including the parameter). Requires a
// well-formed program.
std::map<std::string, Shape> shapes_of(const Program& program);

// Canonical concrete syntax; byte-stable.
std::string pretty_print(const Program& program);

// Reads `.pir` text. Accepts the canonical brace form and the dotted form
// `let parse = fun(s : String {*}). let ... in assert v3` (trailing accept
// implied). Throws SyntaxError.
Program parse_ir(std::string_view text, const std::string& file = "<ir>");

std::string operand_text(const Operand& operand);

}  // namespace adhoc::ir
