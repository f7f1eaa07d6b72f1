#pragma once

#include <stdexcept>
#include <string>

namespace ssc {

/// Raised when caller-supplied data violates an operation's precondition
/// (bad dimensions, non-finite entries, out-of-range parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the text readers; carries the 1-based line where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace ssc
