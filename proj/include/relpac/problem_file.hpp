#pragma once

#include <stdexcept>
#include <string>

#include "relpac/harness.hpp"

namespace relpac {

// Raised on malformed problem files and invalid CLI configurations; the CLI
// maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parses a line-oriented arm-family description. One arm per line:
//
//   arm dist=uniform center=<x> half_width=<w> [a=<lo>] [b=<hi>] [mean=<mu>] [xi=<label>]
//   arm dist=bernoulli p=<p> lo=<v0> hi=<v1> [a=...] [b=...] [mean=...] [xi=...]
//   arm dist=degenerate value=<v> a=<lo> b=<hi> [mean=...] [xi=...]
//
// '#' starts a comment; blank lines are skipped. Ranges default to the
// distribution's support where it determines one; a < b is enforced. The
// oracle mean defaults to the distribution mean unless overridden.
Problem load_problem(const std::string& path);

// Same parser on in-memory text (tests).
Problem parse_problem_text(const std::string& text, const std::string& origin = "<memory>");

} // namespace relpac
