#pragma once

#include <stdexcept>
#include <string>

namespace biofact {

// Bad input: malformed files, violated preconditions, bad flags.
// The CLI maps these to exit status 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file syntax errors carry the 1-based line they were detected on.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Failures of the environment rather than of the input (network, I/O).
// The CLI maps these to exit status 2.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace biofact
