#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace daic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph / matrix / dump text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid configuration or algorithm parameters, reported before any work starts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A size guard (node-pair graph, path enumeration, oracle) was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Snapshot directory missing, partial, corrupt, or unwritable.
class SnapshotError : public Error {
 public:
  using Error::Error;
};

}  // namespace daic
