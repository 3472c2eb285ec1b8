#pragma once

#include <compare>
#include <cstdint>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initsem/enumerate.hpp"
#include "initsem/laws.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"
#include "initsem/term.hpp"

namespace initsem {

namespace detail {
struct TypeNode;
struct TypedTermNode;
struct TypedTermAccess;
}  // namespace detail

/// A simple type: a declared base, an arrow, or (inside schemas only) a
/// schema parameter.
class Type {
 public:
  enum class Kind { Base, Param, Arrow };

  Type() = default;
  static Type base(std::string name);
  static Type param(std::string name);
  static Type arrow(Type domain, Type codomain);

  bool valid() const { return static_cast<bool>(node_); }
  Kind kind() const;
  const std::string& name() const;
  const Type& domain() const;
  const Type& codomain() const;
  /// Base and parameter types have depth 1; an arrow is one deeper than its
  /// deeper side.
  std::size_t depth() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  explicit Type(std::shared_ptr<const detail::TypeNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TypeNode> node_;
};

/// Arrows associate to the right: `(b->b)->b`, `b->b->b`.
std::string print_type(const Type& t);

/// Replaces parameters by their bindings; throws Error(Type) on a free one.
Type instantiate_type(const Type& t, const std::map<std::string, Type>& binding);

using TypedContext = std::vector<Type>;

std::string print_context(const TypedContext& ctx);

struct SchemaArg {
  TypedContext bound;
  Type result;
};

struct Schema {
  std::string name;
  std::vector<std::string> params;
  std::vector<SchemaArg> args;
  Type output;
};

class TypedSignature {
 public:
  TypedSignature() = default;
  /// Validates every type against the declared bases and parameters; throws
  /// Error(Duplicate) or Error(Type).
  TypedSignature(std::string name, std::vector<std::string> bases, bool arrows,
                 std::vector<Schema> schemas);

  const std::string& name() const { return name_; }
  std::span<const std::string> bases() const { return bases_; }
  bool arrows() const { return arrows_; }
  std::span<const Schema> schemas() const { return schemas_; }
  const Schema* find(std::string_view name) const;
  /// Throws Error(UnknownConstructor).
  const Schema& at(std::string_view name) const;

  /// Every type of depth <= d: bases first, then arrows by depth, each
  /// layer ordered by (domain, codomain) position.
  std::vector<Type> types_up_to(std::size_t depth) const;

  /// The untyped signature with the same constructors and binder counts.
  Signature erase() const;

 private:
  std::string name_;
  std::vector<std::string> bases_;
  bool arrows_ = false;
  std::vector<Schema> schemas_;
};

/// Optional `typed NAME`, then `types base NAME[, NAME]*[; arrows]`, then
/// `schema NAME[<p, ...>] : ([τ, ...] τ, ...) -> τ` lines.
TypedSignature parse_typed_signature(std::string_view text, std::string default_name = "typed");
std::string print_typed_signature(const TypedSignature& sig);

Type parse_type(const TypedSignature& sig, std::string_view text);
/// Comma-separated `τ` or `name:τ` entries; the empty string is the empty
/// context. Names, when wanted, are written to `names` ("" for unnamed).
TypedContext parse_typed_context(const TypedSignature& sig, std::string_view text,
                                 std::vector<std::string>* names = nullptr);

/// An intrinsically typed term: a variable (level into its context) or a
/// schema instance with explicit type arguments.
class TypedTerm {
 public:
  enum class Kind { Var, Con };

  TypedTerm() = default;

  /// Checked: level < ctx.size().
  static TypedTerm var(std::size_t level, TypedContext ctx);
  /// Checked against the schema: argument count, type-argument count, each
  /// argument's context (ctx + instantiated bound types) and type.
  static TypedTerm con(const TypedSignature& sig, std::string_view schema,
                       std::vector<Type> type_args, std::vector<TypedTerm> args, TypedContext ctx);

  bool valid() const { return static_cast<bool>(node_); }
  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  const TypedContext& context() const;
  const Type& type() const;
  std::size_t level() const;
  const std::string& schema() const;
  std::span<const Type> type_args() const;
  std::span<const TypedTerm> args() const;
  std::size_t height() const;

  friend bool operator==(const TypedTerm& a, const TypedTerm& b);

 private:
  friend struct detail::TypedTermAccess;
  explicit TypedTerm(std::shared_ptr<const detail::TypedTermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::TypedTermNode> node_;
};

/// `name<τ, ...>(args)` with `{τ, ...}` or `{x:τ, ...}` binder markers and
/// `x<level>` variables. A bare name refers to the innermost binder marker
/// or context entry with that name. Errors: unknown schema, type-argument
/// count, argument type mismatch, scope.
TypedTerm typecheck_term(const TypedSignature& sig, const TypedContext& ctx, std::string_view text,
                         std::span<const std::string> names = {});
std::string print_typed_term(const TypedTerm& t);

/// Drops all type information.
Term erase(const TypedTerm& t);

/// Type-preserving renaming: target[map[i]] == source[i].
struct TypedRenaming {
  TypedContext source;
  TypedContext target;
  std::vector<std::size_t> map;
};

/// Type-preserving substitution: images[i] has type source[i] over target.
struct TypedSubstitution {
  TypedContext source;
  TypedContext target;
  std::vector<TypedTerm> images;
};

/// Throw Error(Type) when the renaming or substitution is not type-preserving.
void validate(const TypedRenaming& r);
void validate(const TypedSubstitution& c);

TypedTerm typed_rename(const TypedTerm& t, const TypedRenaming& r);
TypedTerm typed_subst(const TypedTerm& t, const TypedSubstitution& c);
TypedSubstitution typed_identity(const TypedContext& ctx);
/// Level i goes to typed_subst(c.images[i], d).
TypedSubstitution typed_compose(const TypedSubstitution& c, const TypedSubstitution& d);
/// `x0=TERM;x1=TERM`.
TypedSubstitution parse_typed_substitution(const TypedSignature& sig, const TypedContext& source,
                                           const TypedContext& target, std::string_view text);
std::string print_typed_substitution(const TypedSubstitution& c);

/// Height-bounded typed terms over a context with schema type arguments of
/// depth <= type_depth. Order: variables, then schemas in declaration order,
/// then type-argument tuples (over types_up_to, lexicographic), then
/// argument tuples (first argument slowest).
class TypedUniverse {
 public:
  TypedUniverse(TypedSignature sig, std::size_t type_depth, std::uint64_t cap = kDefaultCountCap);

  const TypedSignature& signature() const { return sig_; }
  /// Throws Error(Resource) past the cap.
  const std::vector<TypedTerm>& terms(const TypedContext& ctx, std::size_t height);
  /// The terms of one type, in the same order.
  const std::vector<TypedTerm>& terms_of(const TypedContext& ctx, std::size_t height,
                                         const Type& type);

 private:
  struct Stage {
    std::vector<TypedTerm> all;
    std::map<Type, std::vector<TypedTerm>> by_type;
  };
  const Stage& stage(const TypedContext& ctx, std::size_t height);

  TypedSignature sig_;
  std::vector<Type> types_;
  std::uint64_t cap_;
  std::map<std::pair<TypedContext, std::size_t>, Stage> stages_;
};

std::vector<TypedTerm> typed_enumerate(const TypedSignature& sig, const TypedContext& ctx,
                                       std::size_t height, std::size_t type_depth,
                                       std::uint64_t cap = kDefaultCountCap);

/// Every context of length <= max_length over types of depth <= type_depth.
std::vector<TypedContext> contexts_up_to(const TypedSignature& sig, std::size_t max_length,
                                         std::size_t type_depth);

/// Type preservation, unit, associativity and naturality laws on the
/// exhaustive typed universe (contexts of length <= max_context over types of
/// depth <= type_depth), and agreement with the untyped engine through
/// erasure.
LawReport run_typed_law_suite(const TypedSignature& sig, const LawBounds& bounds,
                              std::size_t type_depth = 1);

}  // namespace initsem
