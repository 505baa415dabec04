#include "adhoc/interp.hpp"

#include <stdexcept>
#include <unordered_map>

namespace adhoc {

const Value* Verdict::lookup(std::string_view name) const {
  if (!accepted()) return nullptr;
  for (const auto& [n, v] : accept().env)
    if (n == name) return &v;
  return nullptr;
}

std::string Verdict::str() const {
  if (accepted()) return "accept";
  const auto& r = reject();
  return "reject (" + std::string(reason_name(r.reason)) + " at " + r.where.str() + ": " + r.message + ")";
}

Interpreter::Interpreter(const ir::Program& program, const Registry& registry) : registry_(&registry) {
  std::unordered_map<std::string, int> slots;
  slots[program.param] = 0;
  slot_names_.push_back(program.param);
  std::unordered_map<int, int> defined_by;  // slot -> op index
  auto slot_of = [&](const std::string& name) {
    auto it = slots.find(name);
    if (it == slots.end()) throw std::logic_error("interpreter: unbound variable '" + name + "'");
    return it->second;
  };
  for (const auto& step : program.steps) {
    Op op;
    if (const auto* a = std::get_if<ir::Assert>(&step)) {
      op.is_assert = true;
      op.target = slot_of(a->var);
      if (auto it = defined_by.find(op.target); it != defined_by.end()) op.detail = it->second;
      op.where = a->where;
      ops_.push_back(std::move(op));
      continue;
    }
    const auto& let = std::get<ir::Let>(step);
    op.model = registry.find(let.call.builtin);
    if (!op.model) throw std::logic_error("interpreter: unknown builtin '" + let.call.builtin + "'");
    op.where = let.call.where;
    for (const auto& operand : let.call.args) {
      Arg arg;
      if (const auto* v = std::get_if<ir::Var>(&operand))
        arg.slot = slot_of(v->name);
      else if (const auto* s = std::get_if<ir::StrLit>(&operand))
        arg.literal = s->value;
      else if (const auto* i = std::get_if<ir::IntLit>(&operand))
        arg.literal = Integer::from(i->value);
      else
        arg.literal = Function{std::get<ir::FuncRef>(operand).builtin};
      op.args.push_back(std::move(arg));
    }
    op.target = static_cast<int>(slot_names_.size());
    slots[let.var] = op.target;
    defined_by[op.target] = static_cast<int>(ops_.size());
    slot_names_.push_back(let.var);
    ops_.push_back(std::move(op));
  }
}

template <bool kKeepEnv>
Verdict Interpreter::execute(std::string_view input) const {
  std::vector<Value> env(slot_names_.size());
  env[0] = std::string(input);
  std::vector<const Value*> args;
  for (const auto& op : ops_) {
    if (op.is_assert) {
      if (!std::get<bool>(env[op.target])) {
        std::string message = "assertion failed";
        if (op.detail >= 0 && ops_[op.detail].model->name == "equals") {
          const auto& eq = ops_[op.detail];
          auto text = [&](const Arg& a) { return value_text(a.slot >= 0 ? env[a.slot] : a.literal); };
          message += ": " + text(eq.args[0]) + " != " + text(eq.args[1]);
        }
        return Verdict{Rejected{RejectReason::AssertFailed, op.where, std::move(message)}};
      }
      continue;
    }
    args.clear();
    for (const auto& a : op.args) args.push_back(a.slot >= 0 ? &env[a.slot] : &a.literal);
    Outcome result = op.model->concrete(args, *registry_);
    if (!result.accepted()) return Verdict{Rejected{result.reason, op.where, std::move(result.message)}};
    env[op.target] = std::move(*result.value);
  }
  Accepted accepted;
  if constexpr (kKeepEnv) {
    for (std::size_t i = 0; i < env.size(); ++i) accepted.env.emplace_back(slot_names_[i], std::move(env[i]));
  }
  return Verdict{std::move(accepted)};
}

Verdict Interpreter::run(std::string_view input) const { return execute<true>(input); }

bool Interpreter::accepts(std::string_view input) const { return execute<false>(input).accepted(); }

Verdict run(const ir::Program& program, std::string_view input, const Registry& registry) {
  return Interpreter(program, registry).run(input);
}

bool accepts(const ir::Program& program, std::string_view input, const Registry& registry) {
  return Interpreter(program, registry).accepts(input);
}

}  // namespace adhoc
