#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace initsem {

/// Binder counts per argument: entry j is the number of variables bound in
/// argument j. An empty list is a constant.
struct Arity {
  std::vector<std::size_t> binders;

  std::size_t size() const { return binders.size(); }
  bool operator==(const Arity&) const = default;
};

std::string to_string(const Arity& arity);

struct Constructor {
  std::string name;
  Arity arity;

  bool operator==(const Constructor&) const = default;
};

/// A binding signature: named constructors with binder arities, iterated in
/// declaration order.
class Signature {
 public:
  Signature() = default;
  /// Throws Error(Duplicate) on a repeated constructor name.
  Signature(std::string name, std::vector<Constructor> constructors);

  const std::string& name() const { return name_; }
  std::span<const Constructor> constructors() const { return constructors_; }
  std::size_t size() const { return constructors_.size(); }
  bool empty() const { return constructors_.empty(); }

  const Constructor* find(std::string_view name) const;
  /// Throws Error(UnknownConstructor).
  const Constructor& at(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  /// Distinct binder counts used by any argument, ascending.
  std::vector<std::size_t> binder_counts() const;

  bool operator==(const Signature& other) const {
    return name_ == other.name_ && constructors_ == other.constructors_;
  }

 private:
  std::string name_;
  std::vector<Constructor> constructors_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Parses `signature NAME` followed by `con NAME : [n1,...,nk]` lines.
Signature parse_signature(std::string_view text);

/// Canonical form, one constructor per line; parse_signature inverts it.
std::string print_signature(const Signature& sig);

/// An arity-preserving, injective renaming of constructors.
struct SignatureMorphism {
  Signature source;
  Signature target;
  std::map<std::string, std::string> mapping;

  /// Throws Error(Morphism) or Error(Arity) when the morphism is not total,
  /// not injective, names unknown constructors, or changes an arity.
  void validate() const;
  const std::string& apply(std::string_view constructor) const;
};

SignatureMorphism make_morphism(Signature source, Signature target,
                                std::map<std::string, std::string> mapping);
SignatureMorphism identity_morphism(const Signature& sig);
SignatureMorphism compose(const SignatureMorphism& first, const SignatureMorphism& second);

/// Parses `a=b;c=d` (also accepts commas) into a constructor mapping.
std::map<std::string, std::string> parse_constructor_map(std::string_view text);

struct SignatureSum {
  Signature sum;
  SignatureMorphism left;
  SignatureMorphism right;
};

/// Binary coproduct. Right-hand names that collide are qualified with the
/// right signature's name (`LC.app`).
SignatureSum sum_signatures(const Signature& a, const Signature& b);

struct SignaturePushout {
  Signature apex;
  SignatureMorphism left;   // left.target -> apex
  SignatureMorphism right;  // right.target -> apex
};

/// Amalgamated union of the span `left.target <- base -> right.target`.
/// Constructors with a common base preimage are identified under the left
/// name; other collisions are qualified as in sums.
SignaturePushout pushout_signatures(const Signature& base, const SignatureMorphism& left,
                                    const SignatureMorphism& right);

}  // namespace initsem
