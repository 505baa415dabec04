#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "adhoc/ir.hpp"
#include "adhoc/models.hpp"

namespace adhoc {

struct Accepted {
  // Final environment in binding order (parameter first).
  std::vector<std::pair<std::string, Value>> env;
};

struct Rejected {
  RejectReason reason = RejectReason::BuiltinError;
  Provenance where;  // the failing IR node
  std::string message;
};

struct Verdict {
  std::variant<Accepted, Rejected> outcome;

  bool accepted() const { return std::holds_alternative<Accepted>(outcome); }
  const Accepted& accept() const { return std::get<Accepted>(outcome); }
  const Rejected& reject() const { return std::get<Rejected>(outcome); }
  const Value* lookup(std::string_view name) const;
  std::string str() const;
};

// Reference interpreter. Resolves variables to slots once so repeated runs
// (exhaustive agreement checks) stay cheap. The program must be well-formed.
class Interpreter {
 public:
  explicit Interpreter(const ir::Program& program, const Registry& registry = builtins());

  Verdict run(std::string_view input) const;
  bool accepts(std::string_view input) const;

 private:
  struct Arg {
    int slot = -1;  // variable operand, or -1 for the literal below
    Value literal;
  };
  struct Op {
    bool is_assert = false;
    int target = -1;  // slot written by a let, or read by an assert
    int detail = -1;  // for asserts: the op defining the asserted variable
    const BuiltinModel* model = nullptr;
    std::vector<Arg> args;
    Provenance where;
  };

  template <bool kKeepEnv>
  Verdict execute(std::string_view input) const;

  const Registry* registry_;
  std::vector<std::string> slot_names_;
  std::vector<Op> ops_;
};

Verdict run(const ir::Program& program, std::string_view input, const Registry& registry = builtins());
bool accepts(const ir::Program& program, std::string_view input, const Registry& registry = builtins());

}  // namespace adhoc
