#pragma once

#include <stdexcept>
#include <string>

namespace effnum {

/// Raised when a value violates a domain invariant (sum constraint,
/// negativity, normalization, orthonormality).
class ConstraintError : public std::invalid_argument {
 public:
  explicit ConstraintError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised by text/JSON readers on malformed input. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace effnum
