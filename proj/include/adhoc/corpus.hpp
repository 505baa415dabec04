#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Corpus layout: for each entry `<name>.mpy` (or `.pir`), `<name>.expected.ebnf`
// and `<name>.truth.tsv`. The source declares the characters used for the
// exhaustive check in a comment: `# test-alphabet: 0,1_␣`.
namespace adhoc::corpus {

struct Entry {
  std::string name;
  std::filesystem::path source;
  std::filesystem::path expected;
  std::filesystem::path truth;
};

// Entries sorted by name. Sources without companions are still listed; the
// missing files make their checks fail.
std::vector<Entry> discover(const std::filesystem::path& dir);

struct Options {
  std::size_t fuzz_count = 10000;
  std::uint64_t seed = 0;
  int max_rep = 5;
  std::uint64_t max_enumeration = 10'000'000;
  bool exhaustive = true;
  bool parallel = true;
};

struct Check {
  std::string name;  // infer, equivalence, truth, fuzz, exhaustive
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

struct EntryReport {
  std::string name;
  bool exact = false;  // inference emitted no diagnostics
  std::vector<Check> checks;
  bool pass() const;
};

EntryReport check_entry(const Entry& entry, const Options& options);
std::vector<EntryReport> run(const std::filesystem::path& dir, const Options& options);
std::string report_json(const std::vector<EntryReport>& reports);
std::string report_text(const std::vector<EntryReport>& reports);

struct TruthRow {
  std::string input;
  bool accept = false;
};

// Tab-separated rows `escaped-input<TAB>accept|reject`; `#` starts a comment line.
std::vector<TruthRow> read_truth(std::string_view text, const std::string& file);

// The declared test alphabet, unescaped.
std::optional<std::string> test_alphabet(std::string_view source);

// Largest n with sum_{i<=n} size^i <= budget.
std::size_t exhaustive_length(std::size_t alphabet_size, std::uint64_t budget);

// Calls `visit` on every string over `alphabet` of length <= max_length,
// shortest first. Stops early when `visit` returns false.
template <typename Visit>
void for_each_string(std::string_view alphabet, std::size_t max_length, Visit visit) {
  if (alphabet.empty()) {
    visit(std::string_view());
    return;
  }
  std::string word;
  std::vector<std::size_t> digits;
  for (std::size_t len = 0; len <= max_length; ++len) {
    word.assign(len, alphabet.front());
    digits.assign(len, 0);
    while (true) {
      if (!visit(std::string_view(word))) return;
      std::size_t i = len;
      while (i > 0 && digits[i - 1] + 1 == alphabet.size()) {
        --i;
        digits[i] = 0;
        word[i] = alphabet.front();
      }
      if (i == 0) break;
      --i;
      word[i] = alphabet[++digits[i]];
    }
  }
}

std::string read_file(const std::filesystem::path& path);

}  // namespace adhoc::corpus
