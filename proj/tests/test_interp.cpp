#include "adhoc/corpus.hpp"
#include "adhoc/interp.hpp"
#include "support.hpp"

using namespace adhoc;

TEST_CASE("[interp] - example strings on the one-liner") {
  auto p = support::program(support::kIntList, "int_list.mpy");
  Verdict ok = run(p, "12,304");
  REQUIRE(ok.accepted());
  const Value* xs = ok.lookup("xs");
  REQUIRE(xs);
  CHECK(std::get<IntList>(*xs) == IntList{Integer::from(12), Integer::from(304)});
  CHECK(accepts(p, "+01_2,3_0_4 "));

  Verdict empty = run(p, "");
  REQUIRE_FALSE(empty.accepted());
  CHECK(empty.reject().reason == RejectReason::BuiltinError);
  CHECK(empty.reject().where.file == "int_list.mpy");
  CHECK(empty.reject().where.line == 1);
  CHECK_FALSE(accepts(p, ","));
}

TEST_CASE("[interp] - length mismatch is an assertion failure") {
  auto p = support::program(support::kVectorLength, "vl.mpy");
  Verdict v = run(p, "1,2");
  REQUIRE_FALSE(v.accepted());
  CHECK(v.reject().reason == RejectReason::AssertFailed);
  CHECK(v.reject().where.line == 4);
  CHECK(accepts(p, "1, 2 ,3"));
}

TEST_CASE("[interp] - out-of-range index") {
  auto p = support::program("def f(s):\n    return s.split(':')[2]\n");
  Verdict v = run(p, "a:b");
  REQUIRE_FALSE(v.accepted());
  CHECK(v.reject().reason == RejectReason::IndexOutOfRange);
  CHECK(accepts(p, "a:b:c"));
}

TEST_CASE("[interp] - trivial program accepts every string") {
  auto p = ir::parse_ir("let parse = fun(s){ accept }");
  for (const auto& w : support::strings_upto("a ,", 3)) CHECK(accepts(p, w));
  Verdict v = run(p, "x");
  REQUIRE(v.accepted());
  REQUIRE(v.accept().env.size() == 1);
  CHECK(v.accept().env[0].first == "s");
}

TEST_CASE("[interp] - map fails on the first bad element") {
  auto p = support::program(support::kIntList, "int_list.mpy");
  Verdict v = run(p, "1,x,y");
  REQUIRE_FALSE(v.accepted());
  CHECK(v.reject().message.find("\"x\"") != std::string::npos);
}

TEST_CASE("[interp] - verdicts are deterministic and printable") {
  auto p = support::program(support::kIntList, "int_list.mpy");
  CHECK(run(p, "1,").str() == run(p, "1,").str());
  CHECK(run(p, "1").str() == "accept");
  CHECK(run(p, "").str().rfind("reject (BuiltinError at int_list.mpy:1:", 0) == 0);
}

TEST_CASE("[interp] - interpreter agrees with the recorded host verdicts") {
  for (const auto& entry : corpus::discover(support::source_dir() / "corpus")) {
    auto p = frontend::load_program(support::read(entry.source), entry.source.string());
    Interpreter interp(p);
    auto rows = corpus::read_truth(support::read(entry.truth), entry.truth.string());
    CHECK(rows.size() >= 50);
    for (const auto& row : rows) CHECK_MESSAGE(interp.accepts(row.input) == row.accept, entry.name, ": ", quoted(row.input));
  }
}
