#pragma once

#include <iosfwd>
#include <string>

// Command-line driver. Exit codes: 0 ok, 1 semantic finding (diagnostics,
// rejection, inequivalence), 2 usage, I/O or syntax error, 3 soundness
// violation (grammar and interpreter disagree).
namespace adhoc::cli {

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace adhoc::cli
