#include "adhoc/ir.hpp"
#include "adhoc/models.hpp"
#include "support.hpp"

using namespace adhoc;
using namespace adhoc::ir;

namespace {

const std::string kListing =
    "let parse = fun(s : String {*}).\n"
    "  let v1 = split_py \",\" s in\n"
    "  let xs = map int_py v1 in\n"
    "  let v2 = length xs in\n"
    "  let v3 = equals 3 v2 in\n"
    "  assert v3\n";

std::vector<DiagKind> kinds(const Program& p) {
  std::vector<DiagKind> out;
  for (const auto& d : well_formed(p)) out.push_back(d.kind);
  return out;
}

Program with_steps(std::string body) {
  return parse_ir("let p = fun(s : String {*}) {\n" + body + "  accept\n}\n", "t.pir");
}

// Random well-formed program: each step applies a builtin to a variable of a
// fitting shape.
Program random_program(std::mt19937& rng) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  Program p;
  p.name = "gen";
  p.param = "s";
  std::vector<std::pair<std::string, Shape>> vars{{"s", Shape::Str}};
  int fresh = 0;
  const char* seps[] = {",", "::", " ", "\t", "\"", "\\"};
  for (std::size_t n = pick(8); n > 0; --n) {
    auto [name, shape] = vars[pick(vars.size())];
    Call call;
    Shape result = Shape::Str;
    switch (shape) {
      case Shape::Str:
        switch (pick(3)) {
          case 0: call = {"split_py", {StrLit{seps[pick(6)]}, Var{name}}, {}}; result = Shape::StrList; break;
          case 1: call = {"strip_py", {Var{name}}, {}}; result = Shape::Str; break;
          default: call = {"int_py", {Var{name}}, {}}; result = Shape::Int;
        }
        break;
      case Shape::StrList:
        switch (pick(4)) {
          case 0: call = {"map", {FuncRef{"int_py"}, Var{name}}, {}}; result = Shape::IntList; break;
          case 1: call = {"map", {FuncRef{"strip_py"}, Var{name}}, {}}; result = Shape::StrList; break;
          case 2: call = {"length", {Var{name}}, {}}; result = Shape::Int; break;
          default: call = {"index", {Var{name}, IntLit{static_cast<long long>(pick(3))}}, {}}; result = Shape::Str;
        }
        break;
      case Shape::IntList:
        if (pick(2)) {
          call = {"length", {Var{name}}, {}};
        } else {
          call = {"index", {Var{name}, IntLit{static_cast<long long>(pick(3))}}, {}};
        }
        result = Shape::Int;
        break;
      case Shape::Int: call = {"equals", {IntLit{static_cast<long long>(pick(4)) - 1}, Var{name}}, {}}; result = Shape::Bool; break;
      case Shape::Bool: p.steps.push_back(Assert{name, {}}); continue;
      case Shape::Function: continue;
    }
    std::string var = "v" + std::to_string(++fresh);
    p.steps.push_back(Let{var, call, {}});
    vars.emplace_back(var, result);
  }
  return p;
}

}  // namespace

TEST_CASE("[ir] - the reference listing parses and is well-formed") {
  Program p = parse_ir(kListing, "listing.pir");
  CHECK(p.name == "parse");
  CHECK(p.param == "s");
  CHECK(p.steps.size() == 5);
  CHECK(std::holds_alternative<Assert>(p.steps.back()));
  CHECK(well_formed(p).empty());
  auto shapes = shapes_of(p);
  CHECK(shapes.at("s") == Shape::Str);
  CHECK(shapes.at("v1") == Shape::StrList);
  CHECK(shapes.at("xs") == Shape::IntList);
  CHECK(shapes.at("v2") == Shape::Int);
  CHECK(shapes.at("v3") == Shape::Bool);
}

TEST_CASE("[ir] - the unicode spelling parses to the same program") {
  const std::string unicode =
      "let parse = λ(s : String {⋆}).\n"
      "  let v1 = split_py \",\" s in\n"
      "  let xs = map int_py v1 in\n"
      "  let v2 = length xs in\n"
      "  let v3 = equals 3 v2 in\n"
      "  assert v3\n";
  CHECK(same_program(parse_ir(unicode), parse_ir(kListing)));
}

TEST_CASE("[ir] - simplified source equals the parsed listing") {
  Program listing = parse_ir(kListing);
  Program simplified = support::program(
      "def parse(s):\n"
      "    xs = map(int, s.split(','))\n"
      "    assert len(xs) == 3\n");
  CHECK(same_program(listing, simplified));
}

TEST_CASE("[ir] - scoping diagnostics") {
  CHECK(kinds(with_steps("  let v1 = length v9 in\n")) == std::vector<DiagKind>{DiagKind::Scope});
  CHECK(kinds(with_steps("  let v1 = strip_py s in\n  let v1 = strip_py s in\n")) ==
        std::vector<DiagKind>{DiagKind::Scope});
  CHECK(kinds(with_steps("  let s = strip_py s in\n")) == std::vector<DiagKind>{DiagKind::Scope});
}

TEST_CASE("[ir] - shape and arity diagnostics") {
  CHECK(kinds(with_steps("  let v1 = strip_py s in\n  assert v1 in\n")) == std::vector<DiagKind>{DiagKind::Shape});
  CHECK(kinds(with_steps("  let v1 = length s in\n")) == std::vector<DiagKind>{DiagKind::Shape});
  CHECK(kinds(with_steps("  let v1 = strip_py s s in\n")) == std::vector<DiagKind>{DiagKind::Arity});
  CHECK(kinds(with_steps("  let v1 = split_py \",\" s in\n  let v2 = index v1 in\n")) ==
        std::vector<DiagKind>{DiagKind::Arity});
}

TEST_CASE("[ir] - diagnostics carry provenance") {
  auto diags = well_formed(with_steps("  let v1 = length v9 in\n"));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].where.file == "t.pir");
  CHECK(diags[0].where.line == 2);
}

TEST_CASE("[ir] - trivial program prints as three lines") {
  Program p = parse_ir("let parse = fun(s){ accept }");
  CHECK(p.steps.empty());
  CHECK(pretty_print(p) == "let parse = fun(s : String {*}) {\n  accept\n}\n");
}

TEST_CASE("[ir] - golden text of the example programs") {
  support::check_golden("int_list.pir", pretty_print(support::program(support::kIntList, "int_list.mpy")));
  support::check_golden("vector_length.pir", pretty_print(support::program(support::kVectorLength, "vl.mpy")));
}

TEST_CASE("[ir] - printing then parsing is the identity") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 300; ++round) {
    Program p = random_program(rng);
    REQUIRE(well_formed(p).empty());
    std::string text = pretty_print(p);
    Program back = parse_ir(text);
    REQUIRE_MESSAGE(same_program(p, back), text);
    CHECK(pretty_print(back) == text);
  }
}

TEST_CASE("[ir] - literal escapes survive printing") {
  Program p = with_steps("  let v1 = split_py \"\\t\\\"\\\\\\x01 \" s in\n");
  const auto& let = std::get<Let>(p.steps.front());
  CHECK(std::get<StrLit>(let.call.args[0]).value == "\t\"\\\x01 ");
  CHECK(same_program(parse_ir(pretty_print(p)), p));
}

TEST_CASE("[ir] - malformed text and solved holes are syntax errors") {
  CHECK_THROWS_AS(parse_ir("let parse = fun(s : String {*}) {\n  let v1 = in\n  accept\n}\n"), SyntaxError);
  CHECK_THROWS_AS(parse_ir("let parse = fun(s : String {*}) {\n  accept\n"), SyntaxError);
  CHECK_THROWS_AS(parse_ir("let parse = fun(s : String {= \"a\"}) {\n  accept\n}\n"), SyntaxError);
  CHECK_THROWS_AS(parse_ir(""), SyntaxError);
}

TEST_CASE("[ir] - shape names") {
  CHECK(shape_name(Shape::StrList) == "string list");
  CHECK(shape_name(Shape::Bool) == "bool");
  CHECK(operand_text(StrLit{"a b"}) == "\"a b\"");
  CHECK(operand_text(IntLit{-3}) == "-3");
}
