#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xsmoo {

/// An exhaustive routine was asked to enumerate more than its configured limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; `line()` is 1-based, 0 when not line oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads a positive integer from the environment, falling back to `fallback`.
std::size_t env_limit(const char* name, std::size_t fallback);

}  // namespace xsmoo
