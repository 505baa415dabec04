#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adhoc/ir.hpp"
#include "adhoc/provenance.hpp"

// Front end for the subject language: a small Python subset of single-argument
// string functions built from split/strip/int/map/len, indexing, destructuring
// and `len(xs) == k` assertions.
namespace adhoc::frontend {

struct Expr {
  enum class Kind { Name, Str, Int, Float, Call, Attr, Subscript, Compare, BinOp, Unary, Tuple, List };

  Kind kind = Kind::Name;
  std::string text;  // identifier, string value, attribute name or operator
  long long number = 0;
  std::vector<Expr> children;  // Call: callee then arguments; Attr: receiver
  Provenance where;
};

struct Stmt {
  enum class Kind { Assign, Expression, Return, Assert, Pass };

  Kind kind = Kind::Pass;
  std::vector<Expr> targets;  // Assign: a single name, or the names of a list pattern
  bool pattern = false;       // Assign: targets came from `[a, b] = ...` or `a, b = ...`
  std::vector<Expr> values;   // the assigned/returned/asserted expression (0 or 1)
  Provenance where;
};

struct FunctionDef {
  std::string name;
  std::string param;
  std::vector<Stmt> body;
  Provenance where;
};

struct SubjectAST {
  std::string file;
  std::vector<FunctionDef> items;
  // Statements outside any function, e.g. a one-line parser over a free `s`.
  std::vector<Stmt> top_level;
};

// Throws SyntaxError for malformed text and UnsupportedConstruct (with one
// diagnostic per offending span) for host syntax outside the subset.
SubjectAST parse_source(std::string_view text, const std::string& file = "<source>");

// Lowers to A-normal form. Top-level statements without a `def` become a
// parser named after their single free variable. Throws UnsupportedConstruct,
// or SyntaxError when there is nothing to lower.
ir::Program simplify(const SubjectAST& ast);

// Loads `.mpy` or `.pir` text by file extension.
ir::Program load_program(std::string_view text, const std::string& file);

}  // namespace adhoc::frontend
