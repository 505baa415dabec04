#include "adhoc/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include "adhoc/escape.hpp"
#include "adhoc/frontend.hpp"
#include "adhoc/grammar.hpp"
#include "adhoc/interp.hpp"
#include "json.hpp"

namespace adhoc::corpus {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Entry> discover(const fs::path& dir) {
  std::map<std::string, Entry> found;
  for (const auto& item : fs::directory_iterator(dir)) {
    if (!item.is_regular_file()) continue;
    const std::string file = item.path().filename().string();
    for (const char* ext : {".mpy", ".pir"}) {
      std::string_view e(ext);
      if (file.size() > e.size() && file.compare(file.size() - e.size(), e.size(), e) == 0) {
        std::string name = file.substr(0, file.size() - e.size());
        Entry entry{name, item.path(), dir / (name + ".expected.ebnf"), dir / (name + ".truth.tsv")};
        found.emplace(name, entry);
      }
    }
  }
  std::vector<Entry> out;
  for (auto& [name, entry] : found) out.push_back(std::move(entry));
  return out;
}

std::vector<TruthRow> read_truth(std::string_view text, const std::string& file) {
  std::vector<TruthRow> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.rfind('\t');
    Provenance at{file, line_no, 1, 1};
    if (tab == std::string_view::npos) throw SyntaxError(at, "expected '<input>\\t<accept|reject>'");
    auto input = unescape_line(line.substr(0, tab));
    if (!input) throw SyntaxError(at, "malformed escape in input");
    std::string_view verdict = line.substr(tab + 1);
    if (verdict != "accept" && verdict != "reject") throw SyntaxError(at, "verdict must be accept or reject");
    rows.push_back({*input, verdict == "accept"});
  }
  return rows;
}

std::optional<std::string> test_alphabet(std::string_view source) {
  constexpr std::string_view kTag = "test-alphabet:";
  std::size_t at = source.find(kTag);
  if (at == std::string_view::npos) return std::nullopt;
  std::size_t start = at + kTag.size();
  std::size_t end = source.find('\n', start);
  std::string_view raw = source.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
  while (!raw.empty() && (raw.front() == ' ' || raw.front() == '\t')) raw.remove_prefix(1);
  while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r')) raw.remove_suffix(1);
  auto chars = unescape_line(raw);
  if (!chars) return std::nullopt;
  std::string unique;
  for (char c : *chars)
    if (unique.find(c) == std::string::npos) unique.push_back(c);
  return unique;
}

std::size_t exhaustive_length(std::size_t alphabet_size, std::uint64_t budget) {
  if (alphabet_size <= 1) return alphabet_size == 0 ? 0 : static_cast<std::size_t>(std::min<std::uint64_t>(budget - 1, 64));
  std::uint64_t total = 1;
  std::uint64_t power = 1;
  std::size_t n = 0;
  while (true) {
    power *= alphabet_size;
    if (total + power > budget) return n;
    total += power;
    ++n;
  }
}

bool EntryReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass || c.skipped; });
}

namespace {

Check failed(std::string name, std::string detail) { return Check{std::move(name), false, false, std::move(detail)}; }
Check passed(std::string name, std::string detail) { return Check{std::move(name), true, false, std::move(detail)}; }
Check skipped(std::string name, std::string detail) { return Check{std::move(name), false, true, std::move(detail)}; }

std::string first_message(const Error& e) {
  return e.diagnostics().empty() ? e.what() : e.diagnostics().front().str();
}

}  // namespace

EntryReport check_entry(const Entry& entry, const Options& options) {
  EntryReport report;
  report.name = entry.name;

  std::string source;
  ir::Program program;
  std::optional<LanguageModel> model;
  try {
    source = read_file(entry.source);
    program = frontend::load_program(source, entry.source.string());
    model = infer(program);
    report.exact = model->exact();
    std::string detail = report.exact ? "exact" : model->diagnostics.front().str();
    report.checks.push_back(passed("infer", detail));
  } catch (const Error& e) {
    report.checks.push_back(failed("infer", first_message(e)));
  } catch (const std::exception& e) {
    report.checks.push_back(failed("infer", e.what()));
  }
  if (!model) {
    for (const char* name : {"equivalence", "truth", "fuzz", "exhaustive"})
      report.checks.push_back(failed(name, "no inferred grammar"));
    return report;
  }

  const Grammar grammar = to_grammar(*model);
  const Dfa dfa = compile_dfa(grammar);
  const Interpreter interp(program);

  try {
    Grammar expected = parse_ebnf(read_file(entry.expected), entry.expected.string());
    Equivalence eq = compare(dfa, compile_dfa(expected));
    if (eq.equal)
      report.checks.push_back(passed("equivalence", "equivalent to " + entry.expected.filename().string()));
    else
      report.checks.push_back(failed("equivalence", "witness " + adhoc::quoted(*eq.witness) + " is accepted only by the " +
                                                        (eq.witness_in_first ? "inferred" : "expected") +
                                                        " grammar"));
  } catch (const Error& e) {
    report.checks.push_back(failed("equivalence", first_message(e)));
  } catch (const std::exception& e) {
    report.checks.push_back(failed("equivalence", e.what()));
  }

  try {
    auto rows = read_truth(read_file(entry.truth), entry.truth.string());
    std::string problem;
    for (const auto& row : rows) {
      bool host = row.accept;
      if (interp.accepts(row.input) != host) {
        problem = "interpreter disagrees with the host on " + adhoc::quoted(row.input);
        break;
      }
      bool in_grammar = dfa.member(row.input);
      if (in_grammar && !host) {
        problem = "grammar accepts " + adhoc::quoted(row.input) + " but the host rejects it";
        break;
      }
      if (report.exact && !in_grammar && host) {
        problem = "grammar rejects " + adhoc::quoted(row.input) + " but the host accepts it";
        break;
      }
    }
    if (rows.size() < 50 && problem.empty())
      problem = "truth table has " + std::to_string(rows.size()) + " rows, fewer than 50";
    if (problem.empty())
      report.checks.push_back(passed("truth", std::to_string(rows.size()) + " rows agree"));
    else
      report.checks.push_back(failed("truth", problem));
  } catch (const Error& e) {
    report.checks.push_back(failed("truth", first_message(e)));
  } catch (const std::exception& e) {
    report.checks.push_back(failed("truth", e.what()));
  }

  try {
    auto samples = generate(grammar, options.seed, options.max_rep, options.fuzz_count);
    std::string problem;
    for (const auto& s : samples)
      if (!interp.accepts(s)) {
        problem = "interpreter rejects generated " + adhoc::quoted(s);
        break;
      }
    if (problem.empty())
      report.checks.push_back(passed("fuzz", std::to_string(samples.size()) + " generated inputs accepted"));
    else
      report.checks.push_back(failed("fuzz", problem));
  } catch (const Error& e) {
    report.checks.push_back(failed("fuzz", first_message(e)));
  }

  if (!options.exhaustive) {
    report.checks.push_back(skipped("exhaustive", "disabled"));
  } else if (!report.exact) {
    report.checks.push_back(skipped("exhaustive", "inference reported approximations"));
  } else if (auto alphabet = test_alphabet(source); !alphabet) {
    report.checks.push_back(failed("exhaustive", "no '# test-alphabet:' declaration"));
  } else {
    std::size_t n = exhaustive_length(alphabet->size(), options.max_enumeration);
    std::uint64_t count = 0;
    std::string problem;
    for_each_string(*alphabet, n, [&](std::string_view w) {
      ++count;
      if (dfa.member(w) != interp.accepts(w)) {
        problem = "grammar and interpreter disagree on " + adhoc::quoted(w);
        return false;
      }
      return true;
    });
    std::string scope = std::to_string(count) + " strings up to length " + std::to_string(n) + " over " +
                        adhoc::quoted(*alphabet);
    if (problem.empty())
      report.checks.push_back(passed("exhaustive", scope + " agree"));
    else
      report.checks.push_back(failed("exhaustive", problem));
  }
  return report;
}

std::vector<EntryReport> run(const fs::path& dir, const Options& options) {
  auto entries = discover(dir);
  std::vector<EntryReport> reports;
  if (!options.parallel) {
    for (const auto& e : entries) reports.push_back(check_entry(e, options));
    return reports;
  }
  std::vector<std::future<EntryReport>> pending;
  for (const auto& e : entries)
    pending.push_back(std::async(std::launch::async, [&options, e] { return check_entry(e, options); }));
  for (auto& f : pending) reports.push_back(f.get());
  std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return reports;
}

std::string report_json(const std::vector<EntryReport>& reports) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  bool all = true;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["pass"] = r.pass();
    e["exact"] = r.exact;
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    for (const auto& c : r.checks)
      checks[c.name] = {{"status", c.skipped ? "skipped" : (c.pass ? "pass" : "fail")}, {"detail", c.detail}};
    e["checks"] = checks;
    entries.push_back(e);
    all = all && r.pass();
  }
  doc["pass"] = all;
  doc["entries"] = entries;
  return doc.dump(2) + "\n";
}

std::string report_text(const std::vector<EntryReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += (r.pass() ? "PASS " : "FAIL ") + r.name + "\n";
    for (const auto& c : r.checks)
      out += "  " + c.name + ": " + (c.skipped ? "skipped" : (c.pass ? "pass" : "FAIL")) + " (" + c.detail + ")\n";
  }
  std::size_t passed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return r.pass(); });
  out += std::to_string(passed) + "/" + std::to_string(reports.size()) + " entries pass\n";
  return out;
}

}  // namespace adhoc::corpus
