#include <sstream>

#include "adhoc/cli.hpp"
#include "json.hpp"
#include "support.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "adhoc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = adhoc::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& relative) { return (support::source_dir() / relative).string(); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("adhoc_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("[cli] - infer prints the grammar of the one-liner") {
  Run r = cli({"infer", path("corpus/int_list.mpy")});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "s → int (\",\" int)*\n"
        "int → space* sign? digit (\"_\"? digit)* space*\n"
        "digit → \"0\" | \"1\" | \"2\" | \"3\" | \"4\" | \"5\" | \"6\" | \"7\" | \"8\" | \"9\"\n"
        "sign → \"+\" | \"-\"\n"
        "space → \"␣\" | \"\\t\" | \"\\n\" | \"\\v\" | \"\\f\" | \"\\r\"\n");
  Run rec = cli({"infer", "--style", "recursive", path("corpus/int_list.mpy")});
  CHECK(rec.code == 0);
  CHECK(rec.out.rfind("s → int | int \",\" s\n", 0) == 0);
}

TEST_CASE("[cli] - infer reads standard input and writes other formats") {
  Run r = cli({"infer", "--format", "regex"}, support::kIntList);
  CHECK(r.code == 0);
  CHECK(r.out.find("[0-9]") != std::string::npos);
  Run j = cli({"infer", "--format", "json", path("corpus/int_list.mpy")});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["start"] == "s");
  Run ir = cli({"infer", "--format", "ir", path("corpus/int_list.mpy")});
  CHECK(ir.code == 0);
  CHECK(ir.out.find("{= ") != std::string::npos);
  auto dir = scratch("out");
  Run svg = cli({"infer", "--format", "railroad", "-o", (dir / "g.svg").string(), path("corpus/int_list.mpy")});
  CHECK(svg.code == 0);
  CHECK(support::read(dir / "g.svg").rfind("<?xml", 0) == 0);
}

TEST_CASE("[cli] - infer exit codes") {
  auto dir = scratch("empty");
  std::ofstream(dir / "empty.mpy") << "";
  Run empty = cli({"infer", (dir / "empty.mpy").string()});
  CHECK(empty.code == 2);
  CHECK_FALSE(empty.err.empty());

  Run findall = cli({"infer", path("tests/fixtures/findall.mpy")});
  CHECK(findall.code == 1);
  CHECK(findall.err.find("findall.mpy:4:12:") != std::string::npos);

  Run contradiction = cli({"infer", path("tests/fixtures/contradiction.mpy")});
  CHECK(contradiction.code == 1);
  CHECK(contradiction.out.find("∅") != std::string::npos);

  CHECK(cli({"infer", path("no/such/file.mpy")}).code == 2);
  CHECK(cli({"infer", "--format", "yaml", path("corpus/int_list.mpy")}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  Run list = cli({"infer", "--list-builtins"});
  CHECK(list.code == 0);
  CHECK(list.out.find("split_py") != std::string::npos);
}

TEST_CASE("[cli] - check compares grammar and interpreter") {
  Run ok = cli({"check", path("corpus/int_list.mpy"), "--input", "12,304"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "input: \"12,304\"\ngrammar: accept\ninterpreter: accept\nAGREE\n");

  Run reject = cli({"check", path("corpus/int_list.mpy"), "--input", ""});
  CHECK(reject.code == 1);
  CHECK(reject.out.find("grammar: reject\n") != std::string::npos);
  CHECK(reject.out.find("AGREE") != std::string::npos);

  Run lines = cli({"check", path("corpus/int_list.mpy"), "--stdin"}, "1\n\\t2␣\n");
  CHECK(lines.code == 0);

  Run disagree = cli({"check", path("corpus/int_list.mpy"), "--grammar", path("tests/fixtures/int_list_mutated.ebnf"),
                      "--input", "+1"});
  CHECK(disagree.code == 3);
  CHECK(disagree.out.find("DISAGREE") != std::string::npos);
}

TEST_CASE("[cli] - fuzz output is reproducible") {
  Run a = cli({"fuzz", path("corpus/int_list.mpy"), "-n", "3", "--seed", "7"});
  CHECK(a.code == 0);
  support::check_golden("int_list_fuzz_seed7.txt", a.out);
  CHECK(cli({"fuzz", path("corpus/int_list.mpy"), "-n", "3", "--seed", "7"}).out == a.out);
  Run none = cli({"fuzz", path("corpus/int_list.mpy"), "-n", "0"});
  CHECK(none.code == 0);
  CHECK(none.out.empty());
  Run valid = cli({"fuzz", path("corpus/int_list.mpy"), "-n", "200", "--validate"});
  CHECK(valid.code == 0);
  Run bad = cli({"fuzz", path("tests/fixtures/int_list_mutated.ebnf"), "-n", "5"});
  CHECK(bad.code == 0);
}

TEST_CASE("[cli] - diff reports equivalence and witnesses") {
  Run self = cli({"diff", path("corpus/int_list.mpy"), path("corpus/int_list.expected.ebnf")});
  CHECK(self.code == 0);
  CHECK(self.out == "equivalent\n");

  Run other = cli({"diff", path("corpus/int_list.mpy"), path("tests/fixtures/vector_length_cubed.mpy")});
  CHECK(other.code == 1);
  CHECK(other.out == "not equivalent\nwitness: \"0\" (accepted only by " + path("corpus/int_list.mpy") + ")\n");

  auto dir = scratch("diff");
  std::ofstream(dir / "rec.ebnf") << cli({"infer", "--style", "recursive", path("corpus/int_list.mpy")}).out;
  std::ofstream(dir / "rep.json") << cli({"infer", "--format", "json", path("corpus/int_list.mpy")}).out;
  CHECK(cli({"diff", (dir / "rec.ebnf").string(), (dir / "rep.json").string()}).code == 0);
}

TEST_CASE("[cli] - corpus exit codes and reports") {
  auto empty = scratch("corpus_empty");
  Run none = cli({"corpus", empty.string()});
  CHECK(none.code == 0);
  CHECK(none.out == "0/0 entries pass\n");

  Run mutated = cli({"corpus", path("tests/fixtures/mutated_corpus"), "--no-exhaustive"});
  CHECK(mutated.code == 1);
  CHECK(mutated.out.rfind("FAIL int_list\n", 0) == 0);
  CHECK(mutated.out.find("witness \"+0\"") != std::string::npos);

  Run json = cli({"corpus", path("tests/fixtures/mutated_corpus"), "--no-exhaustive", "--report", "json"});
  CHECK(json.code == 1);
  auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["version"] == 1);
  CHECK(doc["pass"] == false);
  REQUIRE(doc["entries"].size() == 1);
  CHECK(doc["entries"][0]["checks"]["equivalence"]["status"] == "fail");
  CHECK(doc["entries"][0]["checks"]["exhaustive"]["status"] == "skipped");

  CHECK(cli({"corpus", path("no/such/dir")}).code == 2);
}
