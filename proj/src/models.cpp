#include "adhoc/models.hpp"

#include <algorithm>

#include "adhoc/escape.hpp"

namespace adhoc {

// ---------------------------------------------------------------------------
// Values

Integer Integer::from(long long value) {
  Integer out;
  out.negative = value < 0;
  unsigned long long magnitude =
      value < 0 ? 0ULL - static_cast<unsigned long long>(value) : static_cast<unsigned long long>(value);
  out.digits = std::to_string(magnitude);
  return out;
}

std::string Integer::str() const { return (negative ? "-" : "") + digits; }

std::string value_text(const Value& value) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return quoted(s); }
    std::string operator()(const StrList& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + quoted(xs[i]);
      return out + "]";
    }
    std::string operator()(const IntList& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].str();
      return out + "]";
    }
    std::string operator()(const Integer& i) const { return i.str(); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Function& f) const { return f.builtin; }
  };
  return std::visit(Visitor{}, value);
}

std::string_view reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::BuiltinError: return "BuiltinError";
    case RejectReason::AssertFailed: return "AssertFailed";
    case RejectReason::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "Reject";
}

// ---------------------------------------------------------------------------
// Demands

CountConstraint CountConstraint::meet(const CountConstraint& other) const {
  CountConstraint out;
  out.at_least = std::max(at_least, other.at_least);
  out.conflict = conflict || other.conflict;
  if (exactly && other.exactly && *exactly != *other.exactly) out.conflict = true;
  out.exactly = exactly ? exactly : other.exactly;
  return out;
}

bool CountConstraint::admits(std::size_t n) const {
  if (conflict) return false;
  if (exactly && n != *exactly) return false;
  return n >= at_least;
}

std::string CountConstraint::str() const {
  if (conflict) return "contradictory";
  std::string out;
  if (exactly) out = "= " + std::to_string(*exactly);
  if (at_least > 0) out += (out.empty() ? "" : " and ") + std::string(">= ") + std::to_string(at_least);
  return out.empty() ? "any" : out;
}

namespace {

bool is_list(ir::Shape s) { return s == ir::Shape::StrList || s == ir::Shape::IntList; }

ir::Shape element_shape(ir::Shape list) {
  return list == ir::Shape::IntList ? ir::Shape::Int : ir::Shape::Str;
}

}  // namespace

Demand Demand::top(ir::Shape shape) {
  Demand d;
  d.shape = shape;
  if (is_list(shape)) d.element.push_back(top(element_shape(shape)));
  return d;
}

Demand Demand::string(Lang lang) {
  Demand d;
  d.shape = ir::Shape::Str;
  d.lang = std::move(lang);
  return d;
}

Demand Demand::integer_equal(long long k) {
  Demand d = top(ir::Shape::Int);
  d.equals = k;
  return d;
}

Demand Demand::truth() {
  Demand d = top(ir::Shape::Bool);
  d.must_hold = true;
  return d;
}

Demand Demand::at_index(std::size_t index) const {
  for (const auto& [i, d] : at)
    if (i == index) return meet(element_demand(), d);
  return element_demand();
}

std::string Demand::str() const {
  switch (shape) {
    case ir::Shape::Str: return debug_string(lang);
    case ir::Shape::Int:
      if (conflict) return "int(contradictory)";
      return equals ? "int(= " + std::to_string(*equals) + ")" : "int";
    case ir::Shape::Bool: return must_hold ? "true" : "bool";
    case ir::Shape::Function: return "function";
    case ir::Shape::StrList:
    case ir::Shape::IntList: {
      std::string out = "list(count " + count.str() + ", each " + element_demand().str();
      for (const auto& [i, d] : at) out += ", [" + std::to_string(i) + "] " + d.str();
      return out + ")";
    }
  }
  return "?";
}

Demand meet(const Demand& a, const Demand& b) {
  Demand out = a;
  switch (a.shape) {
    case ir::Shape::Str: out.lang = intersect(a.lang, b.lang); break;
    case ir::Shape::Int:
      out.conflict = a.conflict || b.conflict || (a.equals && b.equals && *a.equals != *b.equals);
      if (!out.equals) out.equals = b.equals;
      break;
    case ir::Shape::Bool: out.must_hold = a.must_hold || b.must_hold; break;
    case ir::Shape::Function: break;
    case ir::Shape::StrList:
    case ir::Shape::IntList: {
      out.count = a.count.meet(b.count);
      out.element = {meet(a.element_demand(), b.element_demand())};
      for (const auto& [i, d] : b.at) {
        auto it = std::find_if(out.at.begin(), out.at.end(), [&](const auto& p) { return p.first == i; });
        if (it == out.at.end())
          out.at.emplace_back(i, d);
        else
          it->second = meet(it->second, d);
      }
      std::sort(out.at.begin(), out.at.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      break;
    }
  }
  return out;
}

bool DemandOracle::member(const Lang& lang, std::string_view text) {
  auto it = cache_.find(lang.id());
  if (it == cache_.end()) {
    pinned_.push_back(lang);
    it = cache_.emplace(lang.id(), compile(lang)).first;
  }
  return it->second.member(text);
}

bool DemandOracle::satisfies(const Value& value, const Demand& demand) {
  switch (demand.shape) {
    case ir::Shape::Str: {
      const auto* s = std::get_if<std::string>(&value);
      return s && member(demand.lang, *s);
    }
    case ir::Shape::Int: {
      const auto* i = std::get_if<Integer>(&value);
      if (!i || demand.conflict) return false;
      return !demand.equals || *i == Integer::from(*demand.equals);
    }
    case ir::Shape::Bool: {
      const auto* b = std::get_if<bool>(&value);
      return b && (!demand.must_hold || *b);
    }
    case ir::Shape::Function: return std::holds_alternative<Function>(value);
    case ir::Shape::StrList:
    case ir::Shape::IntList: {
      std::size_t size = 0;
      auto check_items = [&](const auto& xs) {
        size = xs.size();
        for (std::size_t i = 0; i < xs.size(); ++i)
          if (!satisfies(Value(xs[i]), demand.at_index(i))) return false;
        return true;
      };
      bool items_ok = false;
      if (const auto* xs = std::get_if<StrList>(&value))
        items_ok = demand.shape == ir::Shape::StrList && check_items(*xs);
      else if (const auto* ys = std::get_if<IntList>(&value))
        items_ok = demand.shape == ir::Shape::IntList && check_items(*ys);
      return items_ok && demand.count.admits(size) && size >= demand.positional_end();
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Named character sets

std::span<const NamedSet> named_sets() {
  static const std::vector<NamedSet> sets = {
      {"digit", "0123456789"},
      {"sign", "+-"},
      {"space", " \t\n\v\f\r"},
  };
  return sets;
}

const NamedSet* named_set_for(const CharSet& set) {
  for (const auto& named : named_sets())
    if (chars::of(named.members) == set) return &named;
  return nullptr;
}

bool is_host_whitespace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

// ---------------------------------------------------------------------------
// int_py

std::optional<Integer> int_py_concrete(std::string_view text) {
  std::size_t lo = 0, hi = text.size();
  while (lo < hi && is_host_whitespace(text[lo])) ++lo;
  while (hi > lo && is_host_whitespace(text[hi - 1])) --hi;
  std::string_view core = text.substr(lo, hi - lo);
  Integer out;
  std::size_t i = 0;
  if (i < core.size() && (core[i] == '+' || core[i] == '-')) out.negative = core[i++] == '-';
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  if (i >= core.size() || !is_digit(core[i])) return std::nullopt;
  std::string digits;
  while (i < core.size()) {
    if (core[i] == '_') {
      ++i;
      if (i >= core.size() || !is_digit(core[i])) return std::nullopt;
    }
    if (!is_digit(core[i])) return std::nullopt;
    digits.push_back(core[i++]);
  }
  std::size_t nz = digits.find_first_not_of('0');
  out.digits = nz == std::string::npos ? "0" : digits.substr(nz);
  if (out.digits == "0") out.negative = false;
  return out;
}

Lang int_py_language(const std::vector<Provenance>& origin) {
  auto named = [&](const char* name, const char* members) {
    return Lang::ref(name, Lang::cls(chars::of(members)), origin);
  };
  Lang digit = named("digit", "0123456789");
  Lang sign = named("sign", "+-");
  Lang space = named("space", " \t\n\v\f\r");
  Lang body = Lang::concat({
      Lang::star(space),
      Lang::opt(sign),
      digit,
      Lang::star(Lang::concat({Lang::opt(Lang::chr('_')), digit})),
      Lang::star(space),
  });
  return Lang::ref("int", body, origin);
}

// ---------------------------------------------------------------------------
// split_py

StrList split_py_concrete(std::string_view text, std::string_view sep) {
  StrList fields;
  std::size_t from = 0;
  while (true) {
    std::size_t at = text.find(sep, from);
    if (at == std::string_view::npos) break;
    fields.emplace_back(text.substr(from, at - from));
    from = at + sep.size();
  }
  fields.emplace_back(text.substr(from));
  return fields;
}

Lang without_occurrence(std::string_view sep) {
  if (sep.size() == 1) return Lang::star(Lang::cls(~chars::of(sep)));
  Lang containing = Lang::concat({Lang::anything(), Lang::literal(std::string(sep)), Lang::anything()});
  return to_lang(compile(containing).complemented());
}

namespace {

// Prefer the most readable equivalent form for a few common results.
Lang tidy(const Lang& lang) {
  if (lang.is_anything() || lang.kind() == LangKind::Empty) return lang;
  Dfa d = compile(lang);
  if (d.empty()) return Lang::empty();
  if (equivalent(d, compile(Lang::anything()))) return Lang::anything();
  return lang;
}

// Strings f.sep in which the first occurrence of sep is the final one.
Lang first_occurrence_at_end(std::string_view sep) {
  Lang lit = Lang::literal(std::string(sep));
  Dfa ends = compile(Lang::concat({Lang::anything(), lit}));
  Dfa earlier = compile(Lang::concat({Lang::anything(), lit, Lang::plus(Lang::cls(chars::all()))}));
  return to_lang(combine(ends, earlier, SetOp::Difference));
}

}  // namespace

Lang split_py_transfer(const Demand& list, std::string_view sep, const Provenance& where,
                       std::vector<Diagnostic>* notes) {
  CountConstraint count = list.count;
  count.at_least = std::max({count.at_least, std::size_t{1}, list.positional_end()});
  if (count.unsatisfiable()) {
    if (notes) {
      std::string why = list.count.conflict ? "contradictory field counts demanded"
                                            : "field count " + list.count.str() + " cannot hold";
      if (!list.count.conflict && list.count.exactly && *list.count.exactly == 0)
        why = "split always yields at least one field, but 0 fields are demanded";
      else if (!list.count.conflict && list.positional_end() > 0)
        why += " together with access to field " + std::to_string(list.positional_end() - 1);
      notes->push_back({DiagKind::Constraint, where, why + "; the parser rejects every input"});
    }
    return Lang::empty();
  }
  const std::size_t mandatory = count.exactly ? *count.exactly : count.at_least;
  const bool open_ended = !count.exactly;
  const Lang sep_lit = Lang::literal(std::string(sep));
  const Lang sep_free = without_occurrence(sep);

  std::vector<Lang> fields;
  for (std::size_t i = 0; i < mandatory; ++i) fields.push_back(list.at_index(i).lang);
  const Lang& element = list.element_demand().lang;

  // Readable form F0 sep F1 ... sep Fm-1 (sep E)* is exact when every field
  // followed by sep has its first sep occurrence at the end; always true for
  // one-character separators once fields are sep-free.
  std::vector<Lang> clean;
  for (const auto& f : fields) clean.push_back(intersect(f, sep_free));
  Lang clean_element = intersect(element, sep_free);
  bool readable = sep.size() == 1;
  if (!readable) {
    Dfa boundary = compile(first_occurrence_at_end(sep));
    readable = true;
    std::vector<Lang> checked(clean.begin(), clean.end() - (open_ended ? 0 : 1));
    if (open_ended) checked.push_back(clean_element);
    for (const auto& f : checked)
      if (!is_subset(compile(Lang::concat({f, sep_lit})), boundary)) readable = false;
  }

  if (readable) {
    std::vector<Lang> parts;
    for (std::size_t i = 0; i < mandatory; ++i) {
      if (i > 0) parts.push_back(sep_lit);
      parts.push_back(clean[i]);
    }
    if (open_ended) parts.push_back(Lang::star(Lang::concat({sep_lit, clean_element})));
    return tidy(Lang::concat(std::move(parts)));
  }

  const Lang boundary = first_occurrence_at_end(sep);
  auto block = [&](const Lang& f) { return intersect(Lang::concat({f, sep_lit}), boundary); };
  std::vector<Lang> parts;
  for (std::size_t i = 0; i + 1 < mandatory; ++i) parts.push_back(block(fields[i]));
  if (open_ended) {
    parts.push_back(Lang::alt({
        clean.back(),
        Lang::concat({block(fields.back()), Lang::star(block(element)), clean_element}),
    }));
  } else {
    parts.push_back(clean.back());
  }
  return tidy(Lang::concat(std::move(parts)));
}

// ---------------------------------------------------------------------------
// strip_py

std::string strip_py_concrete(std::string_view text) {
  static const CharSet strip = chars::strip_whitespace();
  auto stripped = [](char c) { return strip[static_cast<unsigned char>(c)]; };
  std::size_t lo = 0, hi = text.size();
  while (lo < hi && stripped(text[lo])) ++lo;
  while (hi > lo && stripped(text[hi - 1])) --hi;
  return std::string(text.substr(lo, hi - lo));
}

Lang strip_py_transfer(const Lang& demand) {
  const CharSet ws = chars::strip_whitespace();
  const Lang inner = Lang::cls(~ws);
  // Strings with no leading or trailing whitespace.
  const Lang trimmed = Lang::alt({Lang::epsilon(), inner, Lang::concat({inner, Lang::anything(), inner})});
  const Lang core = intersect(demand, trimmed);
  const Lang padded = Lang::concat({Lang::star(Lang::cls(ws)), core, Lang::star(Lang::cls(ws))});
  Dfa result = compile(padded);
  if (result.empty()) return Lang::empty();
  if (equivalent(result, compile(demand))) return demand;
  return tidy(padded);
}

// ---------------------------------------------------------------------------
// Registry

void Registry::add(BuiltinModel model) {
  auto it = std::find_if(models_.begin(), models_.end(), [&](const auto& m) { return m.name == model.name; });
  if (it != models_.end())
    *it = std::move(model);
  else
    models_.push_back(std::move(model));
}

const BuiltinModel* Registry::find(std::string_view name) const {
  for (const auto& m : models_)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

using ir::Shape;
using SigResult = std::variant<Shape, std::string>;

bool is_var(const OperandInfo& info, Shape shape) { return info.shape && *info.shape == shape; }

const std::string* str_lit(const OperandInfo& info) {
  const auto* lit = std::get_if<ir::StrLit>(info.operand);
  return lit ? &lit->value : nullptr;
}

const long long* int_lit(const OperandInfo& info) {
  const auto* lit = std::get_if<ir::IntLit>(info.operand);
  return lit ? &lit->value : nullptr;
}

std::string arity_message(std::string_view name, std::size_t want, std::size_t got) {
  return std::string(name) + " takes " + std::to_string(want) + " operand" + (want == 1 ? "" : "s") + ", got " +
         std::to_string(got);
}

BuiltinModel make_split() {
  BuiltinModel m;
  m.name = "split_py";
  m.host = "str.split(sep)";
  m.summary = "split on every non-overlapping occurrence of a literal separator";
  m.test_alphabet = "0,1_ :";
  m.signature = [](std::span<const OperandInfo> ops, const Registry&) -> SigResult {
    if (ops.size() != 2) return arity_message("split_py", 2, ops.size());
    const auto* sep = str_lit(ops[0]);
    if (!sep) return std::string("split_py expects a string literal separator first");
    if (sep->empty()) return std::string("split_py separator must be non-empty");
    if (!is_var(ops[1], Shape::Str)) return std::string("split_py expects a string variable second");
    return Shape::StrList;
  };
  m.concrete = [](std::span<const Value* const> args, const Registry&) {
    return Outcome::ok(split_py_concrete(std::get<std::string>(*args[1]), std::get<std::string>(*args[0])));
  };
  m.transfer = [](const Demand& out, const TransferContext& ctx) {
    const auto& sep = std::get<ir::StrLit>(ctx.args[0]).value;
    return Demand::string(split_py_transfer(out, sep, ctx.where, ctx.notes));
  };
  return m;
}

BuiltinModel make_strip() {
  BuiltinModel m;
  m.name = "strip_py";
  m.host = "str.strip()";
  m.summary = "remove leading and trailing whitespace";
  m.test_alphabet = "a1 \t\x1c,";
  m.signature = [](std::span<const OperandInfo> ops, const Registry&) -> SigResult {
    if (ops.size() != 1) return arity_message("strip_py", 1, ops.size());
    if (!is_var(ops[0], Shape::Str)) return std::string("strip_py expects a string variable");
    return Shape::Str;
  };
  m.concrete = [](std::span<const Value* const> args, const Registry&) {
    return Outcome::ok(strip_py_concrete(std::get<std::string>(*args[0])));
  };
  m.transfer = [](const Demand& out, const TransferContext&) {
    return Demand::string(strip_py_transfer(out.lang));
  };
  return m;
}

BuiltinModel make_int() {
  BuiltinModel m;
  m.name = "int_py";
  m.host = "int(x)";
  m.summary = "decimal integer with optional sign, digit-group underscores, surrounding whitespace";
  m.test_alphabet = "01+-_ ";
  m.signature = [](std::span<const OperandInfo> ops, const Registry&) -> SigResult {
    if (ops.size() != 1) return arity_message("int_py", 1, ops.size());
    if (!is_var(ops[0], Shape::Str)) return std::string("int_py expects a string variable");
    return Shape::Int;
  };
  m.concrete = [](std::span<const Value* const> args, const Registry&) {
    const auto& text = std::get<std::string>(*args[0]);
    if (auto value = int_py_concrete(text)) return Outcome::ok(*value);
    return Outcome::reject(RejectReason::BuiltinError, "invalid literal for int(): " + quoted(text));
  };
  m.transfer = [](const Demand& out, const TransferContext& ctx) -> Demand {
    if (out.conflict) {
      if (ctx.notes)
        ctx.notes->push_back({DiagKind::Constraint, ctx.where,
                              "contradictory values demanded of one integer; the parser rejects every input"});
      return Demand::string(Lang::empty());
    }
    if (out.equals)
      throw UnsupportedConstraint(ctx.where, "constraints on the value of a parsed integer are not supported");
    return Demand::string(int_py_language({ctx.where}));
  };
  return m;
}

BuiltinModel make_map() {
  BuiltinModel m;
  m.name = "map";
  m.host = "map(f, xs)";
  m.summary = "apply a unary string builtin to every element, left to right, first failure rejects";
  m.test_alphabet = "0,1_ a";
  m.signature = [](std::span<const OperandInfo> ops, const Registry& reg) -> SigResult {
    if (ops.size() != 2) return arity_message("map", 2, ops.size());
    const auto* f = std::get_if<ir::FuncRef>(ops[0].operand);
    if (!f) return std::string("map expects a builtin function first");
    const BuiltinModel* fm = reg.find(f->builtin);
    if (!fm) return "unknown builtin '" + f->builtin + "'";
    if (!is_var(ops[1], Shape::StrList)) return std::string("map expects a string-list variable second");
    ir::Operand elem = ir::Var{"_"};
    OperandInfo info{&elem, Shape::Str};
    auto result = fm->signature(std::span<const OperandInfo>(&info, 1), reg);
    if (const auto* shape = std::get_if<Shape>(&result)) {
      if (*shape == Shape::Str) return Shape::StrList;
      if (*shape == Shape::Int) return Shape::IntList;
    }
    return "map function '" + f->builtin + "' must take a string and return a string or int";
  };
  m.concrete = [](std::span<const Value* const> args, const Registry& reg) -> Outcome {
    const BuiltinModel* fm = reg.find(std::get<Function>(*args[0]).builtin);
    ir::Operand elem = ir::Var{"_"};
    OperandInfo info{&elem, ir::Shape::Str};
    const bool to_int = std::get<ir::Shape>(fm->signature(std::span<const OperandInfo>(&info, 1), reg)) ==
                        ir::Shape::Int;
    StrList strs;
    IntList ints;
    for (const auto& x : std::get<StrList>(*args[1])) {
      Value item = x;
      const Value* arg = &item;
      Outcome r = fm->concrete(std::span<const Value* const>(&arg, 1), reg);
      if (!r.accepted()) return r;
      if (to_int)
        ints.push_back(std::get<Integer>(*r.value));
      else
        strs.push_back(std::move(std::get<std::string>(*r.value)));
    }
    if (to_int) return Outcome::ok(std::move(ints));
    return Outcome::ok(std::move(strs));
  };
  m.transfer = [](const Demand& out, const TransferContext& ctx) {
    const auto& f = std::get<ir::FuncRef>(ctx.args[0]);
    const BuiltinModel* fm = ctx.registry->find(f.builtin);
    ir::Operand elem = ir::Var{"_"};
    TransferContext inner{std::span<const ir::Operand>(&elem, 1), ir::Shape::Str, ctx.where, ctx.registry,
                          ctx.notes};
    Demand in = Demand::top(ir::Shape::StrList);
    in.count = out.count;
    in.element = {fm->transfer(out.element_demand(), inner)};
    for (const auto& [i, d] : out.at) in.at.emplace_back(i, fm->transfer(d, inner));
    return in;
  };
  return m;
}

BuiltinModel make_length() {
  BuiltinModel m;
  m.name = "length";
  m.host = "len(xs)";
  m.summary = "number of list elements";
  m.test_alphabet = "0,1_ a";
  m.signature = [](std::span<const OperandInfo> ops, const Registry&) -> SigResult {
    if (ops.size() != 1) return arity_message("length", 1, ops.size());
    if (!is_var(ops[0], Shape::StrList) && !is_var(ops[0], Shape::IntList))
      return std::string("length expects a list variable");
    return Shape::Int;
  };
  m.concrete = [](std::span<const Value* const> args, const Registry&) {
    std::size_t n = std::holds_alternative<StrList>(*args[0]) ? std::get<StrList>(*args[0]).size()
                                                                : std::get<IntList>(*args[0]).size();
    return Outcome::ok(Integer::from(static_cast<long long>(n)));
  };
  m.transfer = [](const Demand& out, const TransferContext& ctx) {
    Demand in = Demand::top(ctx.operand_shape);
    if (out.conflict) {
      in.count.conflict = true;
    } else if (out.equals) {
      if (*out.equals < 0)
        in.count.conflict = true;
      else
        in.count.exactly = static_cast<std::size_t>(*out.equals);
    }
    return in;
  };
  return m;
}

BuiltinModel make_equals() {
  BuiltinModel m;
  m.name = "equals";
  m.host = "a == b";
  m.summary = "integer equality";
  m.test_alphabet = "0,1_ a";
  m.signature = [](std::span<const OperandInfo> ops, const Registry&) -> SigResult {
    if (ops.size() != 2) return arity_message("equals", 2, ops.size());
    for (const auto& op : ops)
      if (!int_lit(op) && !is_var(op, Shape::Int)) return std::string("equals compares integers");
    return Shape::Bool;
  };
  m.concrete = [](std::span<const Value* const> args, const Registry&) {
    return Outcome::ok(std::get<Integer>(*args[0]) == std::get<Integer>(*args[1]));
  };
  m.transfer = [](const Demand& out, const TransferContext& ctx) {
    if (!out.must_hold) return Demand::top(ir::Shape::Int);
    const long long* literal = nullptr;
    std::size_t vars = 0;
    for (const auto& a : ctx.args) {
      if (const auto* lit = std::get_if<ir::IntLit>(&a)) literal = &lit->value;
      if (std::holds_alternative<ir::Var>(a)) ++vars;
    }
    if (vars != 1 || !literal)
      throw UnsupportedConstraint(ctx.where, "equals between two computed integers is not supported");
    return Demand::integer_equal(*literal);
  };
  return m;
}

BuiltinModel make_index() {
  BuiltinModel m;
  m.name = "index";
  m.host = "xs[i]";
  m.summary = "list element at a non-negative literal position";
  m.test_alphabet = "0,1_ a";
  m.signature = [](std::span<const OperandInfo> ops, const Registry&) -> SigResult {
    if (ops.size() != 2) return arity_message("index", 2, ops.size());
    const auto* i = int_lit(ops[1]);
    if (!i || *i < 0) return std::string("index expects a non-negative integer literal position");
    if (is_var(ops[0], Shape::StrList)) return Shape::Str;
    if (is_var(ops[0], Shape::IntList)) return Shape::Int;
    return std::string("index expects a list variable first");
  };
  m.concrete = [](std::span<const Value* const> args, const Registry&) -> Outcome {
    const Integer& i = std::get<Integer>(*args[1]);
    std::size_t size = std::holds_alternative<StrList>(*args[0]) ? std::get<StrList>(*args[0]).size()
                                                                   : std::get<IntList>(*args[0]).size();
    if (i.negative || i.digits.size() > 18 || std::stoull(i.digits) >= size)
      return Outcome::reject(RejectReason::IndexOutOfRange,
                             "index " + i.str() + " out of range for " + std::to_string(size) + " elements");
    std::size_t at = std::stoull(i.digits);
    if (const auto* xs = std::get_if<StrList>(args[0])) return Outcome::ok((*xs)[at]);
    return Outcome::ok(std::get<IntList>(*args[0])[at]);
  };
  m.transfer = [](const Demand& out, const TransferContext& ctx) {
    auto position = static_cast<std::size_t>(std::get<ir::IntLit>(ctx.args[1]).value);
    Demand in = Demand::top(ctx.operand_shape);
    in.count.at_least = position + 1;
    in.at.emplace_back(position, out);
    return in;
  };
  return m;
}

}  // namespace

const Registry& builtins() {
  static const Registry registry = [] {
    Registry r;
    r.add(make_split());
    r.add(make_strip());
    r.add(make_int());
    r.add(make_map());
    r.add(make_length());
    r.add(make_equals());
    r.add(make_index());
    return r;
  }();
  return registry;
}

}  // namespace adhoc
