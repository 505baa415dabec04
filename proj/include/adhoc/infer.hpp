#pragma once

#include <string>
#include <vector>

#include "adhoc/ir.hpp"
#include "adhoc/lang.hpp"
#include "adhoc/models.hpp"

namespace adhoc {

struct Sublanguage {
  std::string name;
  Lang definition;
  std::vector<Provenance> origin;
};

// The inferred input language of one parser.
struct LanguageModel {
  std::string name;
  std::string param;
  Lang root;
  std::vector<Provenance> root_origin;
  // Named sublanguages reachable from root, in first-reference order.
  std::vector<Sublanguage> sublanguages;
  // Approximation and contradiction notes. When empty, L(root) is exactly
  // the set of accepted inputs.
  std::vector<Diagnostic> diagnostics;
  // The input program with its refinement hole solved.
  ir::Program program;

  bool exact() const { return diagnostics.empty(); }
};

// Walks the let-chain backward from `accept`, turning demands on results
// into demands on operands. Throws UnsupportedConstraint when a demand
// cannot be expressed, UnsupportedConstruct for calls without a variable
// operand, and Error for ill-formed programs.
LanguageModel infer(const ir::Program& program, const Registry& registry = builtins());

}  // namespace adhoc
