#pragma once

#include <stdexcept>
#include <string>

namespace oke {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical error in a formula, scenario or observation source.
// Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Structurally valid input that violates a semantic requirement: undeclared
// names, non-objective knowledge bases, unsatisfiable premises and the like.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A formula handed to an operation outside the fragment that operation is
// defined on (e.g. an only-knowing operator inside a query).
class ScopeError : public Error {
 public:
  using Error::Error;
};

}  // namespace oke
