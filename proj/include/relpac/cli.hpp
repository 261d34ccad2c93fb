#pragma once

#include <iosfwd>

namespace relpac {

// Parses argv and dispatches to the harness. Returns the process exit code:
// 0 on success, 2 on configuration errors, 3 when a sampling cap is hit.
// Data output (CSV / key=value report) goes to `out` unless --out redirects
// it to a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace relpac
