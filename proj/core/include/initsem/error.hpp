#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace initsem {

enum class ErrorKind {
  Syntax,
  Scope,
  Arity,
  UnknownConstructor,
  Duplicate,
  Morphism,
  Type,
  Interpretation,
  EmptyUniverse,
  Resource,
  Uncertified,
  Usage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the DSL and term parsers. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace initsem
