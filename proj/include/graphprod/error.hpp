#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphprod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain (bad vertex id,
/// mismatched lengths, window too small, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed. Line and column are 1-based; zero means
/// the position is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " (line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace graphprod
