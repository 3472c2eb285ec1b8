#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "initsem/term.hpp"

namespace initsem {

namespace detail {
struct ValueNode;
}

/// A carrier element of some model over a context of size n. One tagged
/// representation serves every built-in model:
///   Unit  the single element of the terminal model,
///   Term  a syntax tree (initial and induced models),
///   Inl   a variable of a fixpoint carrier,
///   Inr   a constructor node of a fixpoint carrier, holding inner elements,
///   Set   a finite set of levels (the support model).
/// Equality is structural.
class Value {
 public:
  enum class Kind { Unit, Term, Inl, Inr, Set };

  Value() = default;

  static Value unit(std::size_t context);
  static Value term(Term t);
  static Value inl(std::size_t level, std::size_t context);
  static Value inr(std::string constructor, std::vector<Value> args, std::size_t context);
  /// Levels are sorted and deduplicated.
  static Value set(std::vector<std::size_t> levels, std::size_t context);

  bool valid() const { return static_cast<bool>(node_); }
  Kind kind() const;
  std::size_t context() const;
  const Term& term() const;
  std::size_t level() const;
  const std::string& constructor() const;
  std::span<const Value> args() const;
  std::span<const std::size_t> levels() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  explicit Value(std::shared_ptr<const detail::ValueNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::ValueNode> node_;
};

/// `*`, a printed term, `inl(x3)`, `inr app(.., ..)`, `{x0, x2}`.
std::string to_string(const Value& v);

}  // namespace initsem
