#include "adhoc/provenance.hpp"

namespace adhoc {

std::string Provenance::str() const {
  return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" +
         std::to_string(column);
}

std::string_view kind_name(DiagKind kind) {
  switch (kind) {
    case DiagKind::Syntax: return "syntax error";
    case DiagKind::Unsupported: return "unsupported construct";
    case DiagKind::Scope: return "scope error";
    case DiagKind::Arity: return "arity error";
    case DiagKind::Shape: return "shape error";
    case DiagKind::Constraint: return "constraint";
    case DiagKind::Grammar: return "grammar error";
    case DiagKind::Note: return "note";
  }
  return "error";
}

std::string Diagnostic::str() const {
  return where.str() + ": " + std::string(kind_name(kind)) + ": " + message;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "error";
  std::string out = diagnostics.front().str();
  if (diagnostics.size() > 1)
    out += " (and " + std::to_string(diagnostics.size() - 1) + " more)";
  return out;
}

}  // namespace

Error::Error(DiagKind kind, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), kind_(kind), diagnostics_(std::move(diagnostics)) {}

Error::Error(DiagKind kind, Provenance where, std::string message)
    : Error(kind, std::vector<Diagnostic>{Diagnostic{kind, std::move(where), std::move(message)}}) {}

}  // namespace adhoc
