#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace adhoc {

// A source span. Lines and columns are 1-based; length counts characters.
struct Provenance {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 1;

  std::string str() const;

  friend bool operator==(const Provenance&, const Provenance&) = default;
  friend auto operator<=>(const Provenance&, const Provenance&) = default;
};

enum class DiagKind {
  Syntax,
  Unsupported,
  Scope,
  Arity,
  Shape,
  Constraint,
  Grammar,
  Note,
};

std::string_view kind_name(DiagKind kind);

struct Diagnostic {
  DiagKind kind = DiagKind::Note;
  Provenance where;
  std::string message;

  // "file:line:col: kind: message"
  std::string str() const;
};

// Base of every error the toolkit raises. Carries at least one diagnostic.
class Error : public std::runtime_error {
 public:
  Error(DiagKind kind, std::vector<Diagnostic> diagnostics);
  Error(DiagKind kind, Provenance where, std::string message);

  DiagKind kind() const { return kind_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  DiagKind kind_;
  std::vector<Diagnostic> diagnostics_;
};

// Malformed input text (source, IR, EBNF, JSON).
class SyntaxError : public Error {
 public:
  using Error::Error;
  explicit SyntaxError(std::vector<Diagnostic> d) : Error(DiagKind::Syntax, std::move(d)) {}
  SyntaxError(Provenance where, std::string message)
      : Error(DiagKind::Syntax, std::move(where), std::move(message)) {}
};

// Valid host syntax or IR that falls outside the supported subset.
class UnsupportedConstruct : public Error {
 public:
  explicit UnsupportedConstruct(std::vector<Diagnostic> d)
      : Error(DiagKind::Unsupported, std::move(d)) {}
  UnsupportedConstruct(Provenance where, std::string message)
      : Error(DiagKind::Unsupported, std::move(where), std::move(message)) {}
};

// A demanded constraint no transfer function can express.
class UnsupportedConstraint : public Error {
 public:
  UnsupportedConstraint(Provenance where, std::string message)
      : Error(DiagKind::Constraint, std::move(where), std::move(message)) {}
};

// Ill-formed grammar, or an operation that needs a non-empty language.
class GrammarError : public Error {
 public:
  explicit GrammarError(std::vector<Diagnostic> d) : Error(DiagKind::Grammar, std::move(d)) {}
  GrammarError(Provenance where, std::string message)
      : Error(DiagKind::Grammar, std::move(where), std::move(message)) {}
};

}  // namespace adhoc
