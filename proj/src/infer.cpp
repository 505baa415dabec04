#include "adhoc/infer.hpp"

#include <algorithm>
#include <map>

namespace adhoc {

namespace {

void merge_origin(std::vector<Provenance>& into, const std::vector<Provenance>& from) {
  for (const auto& p : from)
    if (std::find(into.begin(), into.end(), p) == into.end()) into.push_back(p);
}

// Collects embedded Ref definitions. Distinct definitions sharing a name are
// renamed apart (int, int_2, ...).
class Collector {
 public:
  explicit Collector(std::vector<Sublanguage>& out) : out_(out) {}

  Lang visit(const Lang& lang) {
    switch (lang.kind()) {
      case LangKind::Ref: {
        const Lang* def = lang.definition();
        if (!def) return lang;
        Lang body = visit(*def);
        std::string name = lang.text();
        for (int n = 2;; ++n) {
          auto it = std::find_if(out_.begin(), out_.end(), [&](const auto& s) { return s.name == name; });
          if (it == out_.end()) {
            out_.push_back({name, body, lang.origin()});
            break;
          }
          if (it->definition == body) {
            merge_origin(it->origin, lang.origin());
            break;
          }
          name = lang.text() + "_" + std::to_string(n);
        }
        return Lang::ref(name, body, lang.origin());
      }
      case LangKind::Concat:
      case LangKind::Union: {
        std::vector<Lang> items;
        for (const auto& i : lang.items()) items.push_back(visit(i));
        return lang.kind() == LangKind::Concat ? Lang::concat(std::move(items)) : Lang::alt(std::move(items));
      }
      case LangKind::Star: return Lang::star(visit(lang.item()));
      case LangKind::Plus: return Lang::plus(visit(lang.item()));
      case LangKind::Optional: return Lang::opt(visit(lang.item()));
      case LangKind::Repeat: return Lang::repeat(visit(lang.item()), lang.count());
      default: return lang;
    }
  }

 private:
  std::vector<Sublanguage>& out_;
};

}  // namespace

LanguageModel infer(const ir::Program& program, const Registry& registry) {
  auto problems = ir::well_formed(program);
  if (!problems.empty()) {
    DiagKind kind = problems.front().kind;
    throw Error(kind, std::move(problems));
  }
  const auto shapes = ir::shapes_of(program);

  LanguageModel model;
  model.name = program.name;
  model.param = program.param;
  model.root_origin.push_back(program.where);

  std::map<std::string, Demand> demand;
  auto demand_of = [&](const std::string& var) {
    auto it = demand.find(var);
    return it != demand.end() ? it->second : Demand::top(shapes.at(var));
  };
  auto refine = [&](const std::string& var, const Demand& d) { demand[var] = meet(demand_of(var), d); };

  for (auto step = program.steps.rbegin(); step != program.steps.rend(); ++step) {
    if (const auto* a = std::get_if<ir::Assert>(&*step)) {
      refine(a->var, Demand::truth());
      continue;
    }
    const auto& let = std::get<ir::Let>(*step);
    const BuiltinModel* m = registry.find(let.call.builtin);
    std::vector<std::string> vars;
    for (const auto& arg : let.call.args)
      if (const auto* v = std::get_if<ir::Var>(&arg)) vars.push_back(v->name);
    if (vars.empty())
      throw UnsupportedConstruct(let.call.where,
                                 "'" + let.call.builtin + "' has no variable operand; there is nothing to constrain");
    TransferContext ctx{let.call.args, shapes.at(vars.front()), let.call.where, &registry, &model.diagnostics};
    Demand in = m->transfer(demand_of(let.var), ctx);
    // Two variable operands only occur in equals; its transfer refuses any
    // demand that would have to be split between them.
    if (vars.size() > 1) continue;
    refine(vars.front(), in);
    if (in.shape == ir::Shape::Str && !in.lang.is_anything()) model.root_origin.push_back(let.call.where);
  }

  Lang root = demand_of(program.param).lang;
  Collector collector(model.sublanguages);
  model.root = collector.visit(root);
  model.program = program;
  model.program.refinement = model.root;
  return model;
}

}  // namespace adhoc
