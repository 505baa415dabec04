#include "adhoc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "adhoc/corpus.hpp"
#include "adhoc/escape.hpp"
#include "adhoc/frontend.hpp"
#include "adhoc/grammar.hpp"
#include "adhoc/interp.hpp"

namespace adhoc::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;
constexpr int kUnsound = 3;

bool has_extension(const std::string& path, std::string_view ext) {
  return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
}

bool is_grammar_file(const std::string& path) { return has_extension(path, ".ebnf") || has_extension(path, ".json"); }

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
  for (const auto& d : diagnostics) err << d.str() << "\n";
}

// A parser source together with its inferred grammar, or a grammar file.
struct Loaded {
  std::optional<ir::Program> program;
  std::optional<LanguageModel> model;
  Grammar grammar;
};

// An empty path or "-" reads a parser source from `in`.
Loaded load(const std::string& path, Style style, std::ostream& err, std::istream* in = nullptr) {
  Loaded l;
  std::string text;
  std::string name = path;
  if (in && (path.empty() || path == "-")) {
    text.assign(std::istreambuf_iterator<char>(*in), std::istreambuf_iterator<char>());
    name = "<stdin>";
  } else {
    text = corpus::read_file(path);
  }
  if (has_extension(path, ".ebnf")) {
    l.grammar = parse_ebnf(text, path);
  } else if (has_extension(path, ".json")) {
    l.grammar = grammar_from_json(text, path);
  } else {
    l.program = frontend::load_program(text, name);
    l.model = infer(*l.program);
    print_diagnostics(l.model->diagnostics, err);
    l.grammar = to_grammar(*l.model, style);
  }
  auto problems = l.grammar.validate();
  if (!problems.empty()) throw GrammarError(std::move(problems));
  return l;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
}

std::uint64_t parse_seed(const std::string& text) {
  if (text == "random") return std::random_device{}() ^ (static_cast<std::uint64_t>(std::random_device{}()) << 32);
  std::size_t used = 0;
  std::uint64_t seed = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("seed must be an integer or 'random'");
  return seed;
}

int cmd_infer(const std::string& file, const std::string& format, Style style, const std::string& output,
              std::istream& in, std::ostream& out, std::ostream& err) {
  Loaded l = load(file, style, err, &in);
  std::string text;
  if (format == "ebnf") {
    text = to_ebnf(l.grammar);
  } else if (format == "regex") {
    text = to_regex(l.grammar) + "\n";
  } else if (format == "json") {
    text = to_json(l.grammar);
  } else if (format == "railroad") {
    text = to_railroad_svg(l.grammar);
  } else {
    if (!l.model) throw std::invalid_argument("--format ir needs a parser source");
    text = ir::pretty_print(l.model->program);
  }
  emit(text, output, out);
  return l.model && !l.model->exact() ? kFinding : kOk;
}

int list_builtins(std::ostream& out) {
  for (const auto& m : builtins().all()) out << m.name << "\t" << m.host << "\t" << m.summary << "\n";
  return kOk;
}

int cmd_check(const std::string& file, const std::optional<std::string>& input, bool from_stdin,
              const std::string& grammar_file, std::istream& in, std::ostream& out, std::ostream& err) {
  if (is_grammar_file(file)) throw std::invalid_argument("check needs a parser source (.mpy or .pir)");
  if (input.has_value() == from_stdin) throw std::invalid_argument("give exactly one of --input and --stdin");
  Loaded l = load(file, Style::Repetition, err);
  Grammar grammar = grammar_file.empty() ? l.grammar : load(grammar_file, Style::Repetition, err).grammar;
  const Dfa dfa = compile_dfa(grammar);
  const Interpreter interp(*l.program);

  std::vector<std::string> inputs;
  if (input) {
    inputs.push_back(*input);
  } else {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto text = unescape_line(line);
      if (!text) throw SyntaxError(Provenance{"<stdin>", line_no, 1, 1}, "malformed escape");
      inputs.push_back(*text);
    }
  }

  bool disagree = false;
  bool all_accept = true;
  for (const auto& text : inputs) {
    Membership m = member(dfa, text);
    print_diagnostics(m.diagnostics, err);
    Verdict v = interp.run(text);
    bool agree = m.member == v.accepted();
    out << "input: " << quoted(text) << "\n"
        << "grammar: " << (m.member ? "accept" : "reject") << "\n"
        << "interpreter: " << v.str() << "\n"
        << (agree ? "AGREE" : "DISAGREE") << "\n";
    disagree = disagree || !agree;
    all_accept = all_accept && v.accepted();
  }
  if (disagree) return kUnsound;
  return all_accept ? kOk : kFinding;
}

int cmd_fuzz(const std::string& file, std::size_t count, const std::string& seed_text, int max_rep, bool validate,
             std::ostream& out, std::ostream& err) {
  Loaded l = load(file, Style::Repetition, err);
  if (validate && !l.program) throw std::invalid_argument("--validate needs a parser source (.mpy or .pir)");
  if (count == 0) return kOk;
  auto samples = generate(l.grammar, parse_seed(seed_text), max_rep, count);
  std::optional<Interpreter> interp;
  if (validate) interp.emplace(*l.program);
  int status = kOk;
  for (const auto& s : samples) {
    out << escape_line(s) << "\n";
    if (interp) {
      Verdict v = interp->run(s);
      if (!v.accepted()) {
        err << "soundness violation: " << quoted(s) << " is generated but " << v.str() << "\n";
        status = kUnsound;
      }
    }
  }
  return status;
}

int cmd_diff(const std::string& a, const std::string& b, std::ostream& out, std::ostream& err) {
  Grammar ga = load(a, Style::Repetition, err).grammar;
  Grammar gb = load(b, Style::Repetition, err).grammar;
  Equivalence eq = equivalent(ga, gb);
  if (eq.equal) {
    out << "equivalent\n";
    return kOk;
  }
  out << "not equivalent\n"
      << "witness: " << quoted(*eq.witness) << " (accepted only by " << (eq.witness_in_first ? a : b) << ")\n";
  return kFinding;
}

int cmd_corpus(const std::string& dir, const std::string& report, const corpus::Options& options,
               const std::string& output, std::ostream& out) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
  auto reports = corpus::run(dir, options);
  emit(report == "json" ? corpus::report_json(reports) : corpus::report_text(reports), output, out);
  for (const auto& r : reports)
    if (!r.pass()) return kFinding;
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infer grammars from ad hoc string parsers", "adhoc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const std::map<std::string, Style> styles = {{"repetition", Style::Repetition}, {"recursive", Style::Recursive}};

  std::string file, file_b, format = "ebnf", output, grammar_file, seed = "0", report = "text";
  Style style = Style::Repetition;
  bool list = false, from_stdin = false, validate = false, no_exhaustive = false;
  std::optional<std::string> input;
  std::size_t count = 10;
  int max_rep = 5;
  corpus::Options corpus_options;

  auto* infer_cmd = app.add_subcommand("infer", "Infer and render the input grammar of a parser");
  infer_cmd->add_option("file", file, "Parser source (.mpy, .pir) or grammar (.ebnf, .json); standard input if omitted");
  infer_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"ebnf", "regex", "json", "railroad", "ir"}));
  infer_cmd->add_option("--style", style, "Rendering of separated lists")
      ->transform(CLI::CheckedTransformer(styles));
  infer_cmd->add_option("-o,--output", output, "Write to a file instead of standard output");
  infer_cmd->add_flag("--list-builtins", list, "List the builtin models and exit");

  auto* check_cmd = app.add_subcommand("check", "Compare grammar membership with the interpreter");
  check_cmd->add_option("file", file, "Parser source (.mpy or .pir)")->required();
  check_cmd->add_option("--input", input, "Input string, taken literally");
  check_cmd->add_flag("--stdin", from_stdin, "Read escaped inputs from standard input, one per line");
  check_cmd->add_option("--grammar", grammar_file, "Check this grammar (.ebnf or .json) instead of the inferred one");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Generate inputs from the inferred grammar");
  fuzz_cmd->add_option("file", file, "Parser source or grammar")->required();
  fuzz_cmd->add_option("-n", count, "Number of inputs");
  fuzz_cmd->add_option("--seed", seed, "Seed, or 'random'");
  fuzz_cmd->add_option("--max-rep", max_rep, "Repetition bound")->check(CLI::PositiveNumber);
  fuzz_cmd->add_flag("--validate", validate, "Run every input through the interpreter");

  auto* diff_cmd = app.add_subcommand("diff", "Decide whether two parsers or grammars accept the same language");
  diff_cmd->add_option("a", file, "First parser source or grammar")->required();
  diff_cmd->add_option("b", file_b, "Second parser source or grammar")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "Run every check on a corpus directory");
  corpus_cmd->add_option("dir", file, "Corpus directory")->required();
  corpus_cmd->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));
  corpus_cmd->add_option("--fuzz-count", corpus_options.fuzz_count, "Generated inputs per entry");
  corpus_cmd->add_option("--seed", seed, "Seed for generation");
  corpus_cmd->add_option("--max-enum", corpus_options.max_enumeration, "Exhaustive enumeration budget per entry");
  corpus_cmd->add_flag("--no-exhaustive", no_exhaustive, "Skip the exhaustive agreement check");
  corpus_cmd->add_option("-o,--output", output, "Write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (infer_cmd->parsed()) {
      if (list) return list_builtins(out);
      return cmd_infer(file, format, style, output, in, out, err);
    }
    if (check_cmd->parsed()) return cmd_check(file, input, from_stdin, grammar_file, in, out, err);
    if (fuzz_cmd->parsed()) return cmd_fuzz(file, count, seed, max_rep, validate, out, err);
    if (diff_cmd->parsed()) return cmd_diff(file, file_b, out, err);
    corpus_options.seed = parse_seed(seed);
    corpus_options.exhaustive = !no_exhaustive;
    return cmd_corpus(file, report, corpus_options, output, out);
  } catch (const SyntaxError& e) {
    print_diagnostics(e.diagnostics(), err);
    return kUsage;
  } catch (const Error& e) {
    print_diagnostics(e.diagnostics(), err);
    return kFinding;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace adhoc::cli
