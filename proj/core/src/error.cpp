#include "initsem/error.hpp"

namespace initsem {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Scope: return "scope";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::UnknownConstructor: return "unknown-constructor";
    case ErrorKind::Duplicate: return "duplicate";
    case ErrorKind::Morphism: return "morphism";
    case ErrorKind::Type: return "type";
    case ErrorKind::Interpretation: return "interpretation";
    case ErrorKind::EmptyUniverse: return "empty-universe";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Uncertified: return "uncertified";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::Syntax,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace initsem
