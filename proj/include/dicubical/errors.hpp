#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dicubical {

/// Malformed or inconsistent input data (bad cube, bad file, unmet precondition).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A text parse failure with a 1-based source position.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : DataError("line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Path enumeration would exceed the configured hard limit.
class ScaleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dicubical
