#pragma once

#include <stdexcept>
#include <string>

namespace abcprop {

// Malformed or out-of-range input supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exponential search hit its configured work limit. Never a verdict.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& message)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace abcprop
