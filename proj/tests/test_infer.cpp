#include "adhoc/infer.hpp"
#include "adhoc/interp.hpp"
#include "support.hpp"

using namespace adhoc;

namespace {

Dfa model_dfa(const LanguageModel& m) { return compile(m.root); }

// Brute-force check that the model is exactly the set of accepted strings.
void check_exact(const std::string& source, std::string_view alphabet, std::size_t n) {
  auto p = support::program(source);
  auto m = infer(p);
  REQUIRE(m.exact());
  Dfa d = model_dfa(m);
  Interpreter interp(p);
  for (const auto& w : support::strings_upto(alphabet, n))
    REQUIRE_MESSAGE(d.member(w) == interp.accepts(w), source, " on ", quoted(w));
}

}  // namespace

TEST_CASE("[infer] - the one-liner yields the reference language") {
  auto m = infer(support::program(support::kIntList, "int_list.mpy"));
  CHECK(m.exact());
  CHECK(m.name == "s");
  CHECK(m.program.solved());
  CHECK(equivalent(model_dfa(m), support::dfa_of(support::kIntListReference)));
}

TEST_CASE("[infer] - vector_length yields three comma-separated integers") {
  auto m = infer(support::program(support::kVectorLength, "vl.mpy"));
  CHECK(m.exact());
  CHECK(equivalent(model_dfa(m), support::dfa_of(support::kVectorLengthReference)));
}

TEST_CASE("[infer] - trivial program is every string") {
  auto m = infer(ir::parse_ir("let parse = fun(s){ accept }"));
  CHECK(m.root.is_anything());
  CHECK(m.exact());
}

TEST_CASE("[infer] - sublanguages carry provenance") {
  auto m = infer(support::program(support::kIntList, "int_list.mpy"));
  REQUIRE_FALSE(m.sublanguages.empty());
  std::set<std::string> names;
  for (const auto& sub : m.sublanguages) names.insert(sub.name);
  CHECK(names == std::set<std::string>{"digit", "int", "sign", "space"});
  for (const auto& sub : m.sublanguages) {
    CHECK_FALSE(sub.origin.empty());
    for (const auto& at : sub.origin) CHECK(at.file == "int_list.mpy");
  }
  CHECK_FALSE(m.root_origin.empty());
}

TEST_CASE("[infer] - contradictory lengths give the empty language and a diagnostic") {
  auto m = infer(support::program(
      "def f(s):\n"
      "    xs = s.split(',')\n"
      "    assert len(xs) == 2\n"
      "    assert len(xs) == 3\n"));
  CHECK_FALSE(m.exact());
  CHECK(model_dfa(m).empty());
  REQUIRE(m.diagnostics.size() >= 1);
  CHECK(m.diagnostics.front().where.line >= 2);
}

TEST_CASE("[infer] - constraints on parsed integer values are refused") {
  CHECK_THROWS_AS(infer(support::program("def f(s):\n    assert int(s) == 3\n")), UnsupportedConstraint);
}

TEST_CASE("[infer] - exact on small programs by exhaustive comparison") {
  check_exact(support::kIntList, "1,-_ ", 6);
  check_exact(support::kVectorLength, "1,- ", 6);
  check_exact("def f(s):\n    a, b = s.split('::')\n    return int(b)\n", "1: a", 6);
  check_exact("def f(s):\n    x = s.strip().split(' ')\n    y = int(x[1])\n", "1 \ta", 6);
  check_exact("def f(s):\n    xs = list(map(str.strip, s.split(';')))\n    assert len(xs) == 2\n    n = int(xs[1])\n",
              "1; \t", 6);
  check_exact("def f(s):\n    a = s.split(',')\n    b = a[1].split(':')\n    n = int(b[0])\n", "1,:", 7);
}

TEST_CASE("[infer] - the solved hole prints in the IR") {
  auto m = infer(support::program(support::kIntList, "int_list.mpy"));
  std::string text = ir::pretty_print(m.program);
  CHECK(text.find("{= ") != std::string::npos);
  CHECK_THROWS_AS(ir::parse_ir(text), SyntaxError);
}

TEST_CASE("[infer] - inference is deterministic") {
  auto a = infer(support::program(support::kVectorLength, "vl.mpy"));
  auto b = infer(support::program(support::kVectorLength, "vl.mpy"));
  CHECK(a.root == b.root);
  CHECK(debug_string(a.root) == debug_string(b.root));
}
