#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initsem/signature.hpp"

namespace initsem {

namespace detail {
struct TermNode;
}

/// A well-scoped term over a context of size n. Variables are de Bruijn
/// levels: a binder of m over context n introduces levels n..n+m-1.
/// Immutable; copies share structure.
class Term {
 public:
  enum class Kind { Var, Con };

  Term() = default;

  /// Checked variable; throws Error(Scope) when level >= context.
  static Term var(std::size_t level, std::size_t context);
  /// Builds a constructor node without consulting a signature. Each argument
  /// must be scoped over at least `context`; its binder count is the
  /// difference.
  static Term con(std::string name, std::vector<Term> args, std::size_t context);

  bool valid() const { return static_cast<bool>(node_); }
  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  std::size_t context() const;
  std::size_t level() const;
  const std::string& constructor() const;
  std::span<const Term> args() const;
  std::size_t binders(std::size_t arg) const;
  std::size_t height() const;
  std::size_t hash() const;
  /// Stable address of the shared node; usable as a memo key.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

Term make_var(std::size_t level, std::size_t context);

/// Checked constructor application: the constructor must exist, the argument
/// count must match, and argument j must be scoped over context + binders_j.
Term make_con(const Signature& sig, std::string_view name, std::vector<Term> args,
              std::size_t context);

inline std::size_t height(const Term& t) { return t.height(); }

/// Re-validates a term hereditarily against a signature; throws on the first
/// violation.
void scope_check(const Signature& sig, const Term& t);
bool is_well_scoped(const Signature& sig, const Term& t);

/// `x<level>`, `name(arg, ...)`, `{m} term` for an argument binding m.
Term parse_term(const Signature& sig, std::size_t context, std::string_view text);
std::string print_term(const Term& t);

}  // namespace initsem
