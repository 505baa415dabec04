#include "adhoc/automata.hpp"
#include "adhoc/models.hpp"
#include "agreement.hpp"
#include "support.hpp"

using namespace adhoc;

TEST_CASE("[models] - int_py concrete values") {
  CHECK(int_py_concrete("+01_2") == Integer::from(12));
  CHECK(int_py_concrete(" -0\t") == Integer::from(0));
  CHECK(int_py_concrete("-4_2") == Integer::from(-42));
  CHECK(int_py_concrete("12") == Integer::from(12));
  CHECK(int_py_concrete("123456789012345678901234567890")->str() == "123456789012345678901234567890");
  for (const char* bad : {"", "+", "-", "1__2", "_1", "1_", "1 2", "+-1", "0x1", "1.0", "\x1c" "1", "_"})
    CHECK_MESSAGE(!int_py_concrete(bad).has_value(), bad);
}

TEST_CASE("[models] - int_py agrees with the independent int oracle") {
  for (const auto& w : support::strings_upto("01+-_ \ta", 5)) REQUIRE_MESSAGE(int_py_concrete(w).has_value() == support::host_int(w), w);
}

TEST_CASE("[models] - int_py language is exactly the concrete domain") {
  Dfa d = compile(int_py_language());
  CHECK(d.member("12"));
  CHECK_FALSE(d.member("_"));
  CHECK_FALSE(d.member(""));
  for (const auto& w : support::strings_upto("01+-_ ", 3)) REQUIRE_MESSAGE(d.member(w) == int_py_concrete(w).has_value(), w);
  for (const auto& w : support::strings_upto("0+-_ \t\v", 5)) REQUIRE_MESSAGE(d.member(w) == int_py_concrete(w).has_value(), w);
}

TEST_CASE("[models] - int_py language is built from the named digit, sign and space sets") {
  Lang l = int_py_language();
  std::set<std::string> named;
  std::function<void(const Lang&)> walk = [&](const Lang& x) {
    if (x.kind() == LangKind::Ref) named.insert(x.text());
    if (x.definition()) walk(*x.definition());
    for (const auto& i : x.items()) walk(i);
  };
  walk(l);
  CHECK(named == std::set<std::string>{"digit", "int", "sign", "space"});
}

TEST_CASE("[models] - split_py concrete") {
  CHECK(split_py_concrete("12,304", ",") == StrList{"12", "304"});
  CHECK(split_py_concrete("", ",") == StrList{""});
  CHECK(split_py_concrete("a,,b", ",") == StrList{"a", "", "b"});
  CHECK(split_py_concrete(":::", "::") == StrList{"", ":"});
  for (const auto& w : support::strings_upto("a,:", 6)) {
    for (const char* sep : {",", "::", "a:"}) {
      auto fields = split_py_concrete(w, sep);
      REQUIRE(fields == support::host_split(w, sep));
      std::string joined;
      for (std::size_t i = 0; i < fields.size(); ++i) joined += (i ? sep : "") + fields[i];
      CHECK(joined == w);
      for (const auto& f : fields) CHECK(f.find(sep) == std::string::npos);
    }
  }
}

TEST_CASE("[models] - split_py transfer examples") {
  const Lang int_lang = int_py_language();
  Demand at_least_one = Demand::top(ir::Shape::StrList);
  at_least_one.element = {Demand::string(int_lang)};
  at_least_one.count.at_least = 1;
  Dfa list = compile(split_py_transfer(at_least_one, ",", {}, nullptr));
  CHECK(equivalent(list, support::dfa_of(support::kIntListReference)));

  Demand three = at_least_one;
  three.count.exactly = 3;
  CHECK(equivalent(compile(split_py_transfer(three, ",", {}, nullptr)), support::dfa_of(support::kVectorLengthReference)));

  Demand anything = Demand::top(ir::Shape::StrList);
  anything.count.at_least = 1;
  CHECK(compile(split_py_transfer(anything, ",", {}, nullptr)).complemented().empty());
}

TEST_CASE("[models] - strip and index concrete") {
  CHECK(strip_py_concrete(" a ") == "a");
  CHECK(strip_py_concrete("\t\n a b\x1c") == "a b");
  CHECK(strip_py_concrete("") == "");
  const BuiltinModel* index = builtins().find("index");
  REQUIRE(index);
  Value xs = StrList{"a", "b"};
  Value two = Integer::from(2);
  const Value* args[] = {&xs, &two};
  Outcome out = index->concrete(args, builtins());
  CHECK_FALSE(out.accepted());
  CHECK(out.reason == RejectReason::IndexOutOfRange);
}

TEST_CASE("[models] - registry contents") {
  std::vector<std::string> names;
  for (const auto& m : builtins().all()) {
    names.push_back(m.name);
    CHECK_FALSE(m.host.empty());
    CHECK_FALSE(m.summary.empty());
    CHECK(m.test_alphabet.size() >= 6);
  }
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"equals", "index", "int_py", "length", "map", "split_py", "strip_py"});
  CHECK(builtins().find("nope") == nullptr);
}

TEST_CASE("[models] - named sets") {
  REQUIRE(named_set_for(chars::digits()));
  CHECK(named_set_for(chars::digits())->name == "digit");
  CHECK(named_set_for(chars::signs())->name == "sign");
  CHECK(named_set_for(chars::whitespace())->name == "space");
  CHECK(named_set_for(chars::of("ab")) == nullptr);
}

TEST_CASE("[models] - count constraints") {
  CountConstraint a, b;
  a.exactly = 2;
  b.exactly = 3;
  CHECK(a.meet(b).conflict);
  CHECK(a.meet(b).unsatisfiable());
  CountConstraint c;
  c.at_least = 3;
  CHECK(a.meet(c).unsatisfiable());
  CHECK(c.admits(4));
  CHECK_FALSE(c.admits(2));
  CHECK(a.admits(2));
}

TEST_CASE("[models] - equals refuses two computed operands") {
  const BuiltinModel* eq = builtins().find("equals");
  std::vector<ir::Operand> args{ir::Var{"a"}, ir::Var{"b"}};
  TransferContext ctx{args, ir::Shape::Int, {}, &builtins(), nullptr};
  CHECK_THROWS_AS(eq->transfer(Demand::truth(), ctx), UnsupportedConstraint);
}

TEST_CASE("[models] - concrete and transfer agree on every builtin") {
  for (const auto& model : builtins().all()) {
    auto r = agreement::check(model, 4);
    INFO(model.name, ": ", r.first_failure);
    CHECK(r.checks > 0);
    CHECK(r.failures == 0);
  }
}
