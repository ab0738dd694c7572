// Exception taxonomy shared across the library and the CLI.
//
// Precondition violations on library operations throw std::invalid_argument.
// The types below cover the remaining failure classes; the CLI maps them to
// exit codes (config error -> 2, I/O and data-file parse errors -> 3).
#pragma once

#include <stdexcept>
#include <string>

namespace polarlink {

// A square GF(2) matrix had no inverse; for polar codes this signals an
// information set not produced by the lower-triangular-kernel construction.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid experiment or code configuration (CLI flags, config file values).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A data file (reliability order, CSV) failed to parse.
struct ParseError : std::runtime_error {
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

// Filesystem-level failure (open/read/write).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polarlink
