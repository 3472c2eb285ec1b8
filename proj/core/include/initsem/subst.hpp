#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initsem/faults.hpp"
#include "initsem/signature.hpp"
#include "initsem/term.hpp"

namespace initsem {

/// A total map from levels 0..source-1 to levels 0..target-1.
class Renaming {
 public:
  /// Throws Error(Scope) when an image is out of range or the table has the
  /// wrong length.
  Renaming(std::size_t source, std::size_t target, std::vector<std::size_t> map);

  static Renaming identity(std::size_t n);
  /// The injection of n into n + m that fixes every level.
  static Renaming inclusion(std::size_t n, std::size_t target);

  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }
  std::size_t operator()(std::size_t level) const { return map_[level]; }
  std::span<const std::size_t> table() const { return map_; }

  /// First this, then `next`.
  Renaming then(const Renaming& next) const;
  /// Extension by identity on m fresh levels: source+p -> target+p.
  Renaming extended(std::size_t m) const;

  bool operator==(const Renaming&) const = default;

 private:
  std::size_t source_;
  std::size_t target_;
  std::vector<std::size_t> map_;
};

std::string print_renaming(const Renaming& r);

/// A total map from levels 0..source-1 to terms over `target`.
class Substitution {
 public:
  /// Throws Error(Scope) when an image is not scoped over `target` or the
  /// number of images differs from `source`.
  Substitution(std::size_t source, std::size_t target, std::vector<Term> images);

  /// The unit: level i goes to the variable x_i.
  static Substitution identity(std::size_t n);
  static Substitution from_renaming(const Renaming& r);

  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }
  const Term& operator[](std::size_t level) const { return images_[level]; }
  std::span<const Term> images() const { return images_; }

  bool operator==(const Substitution&) const = default;

 private:
  std::size_t source_;
  std::size_t target_;
  std::vector<Term> images_;
};

/// `x0=TERM;x1=TERM`, every source level assigned in order.
std::string print_substitution(const Substitution& c);
Substitution parse_substitution(const Signature& sig, std::size_t source, std::size_t target,
                                std::string_view text);

Term rename(const Term& t, const Renaming& r);
/// Renaming along the inclusion of t.context() into `target`.
Term weaken(const Term& t, std::size_t target);

/// c extended for m binders: old levels map to their images weakened into
/// target + m, fresh level source + p maps to the variable target + p.
Substitution weaken_subst(const Substitution& c, std::size_t m, const Faults& faults = {});

/// Direct structural substitution using weaken_subst at every binder.
Term subst_oracle(const Term& t, const Substitution& c, const Faults& faults = {});

/// A natural family f_G : terms over G -> terms over G sending variables to
/// themselves. Only the term functor pointed by variables is instantiated.
using PointedAssignment = std::function<Term(const Term&)>;
PointedAssignment identity_assignment();

/// Generic bracket {f}: variables go to f of their (weakened) label,
/// constructor nodes are rebuilt after relabeling each argument through the
/// strength: old labels are carried along the inclusion and the m fresh
/// levels get fresh variables. Labels are weakened lazily, at lookup.
Term hss_bracket(const PointedAssignment& f, const Term& t, std::span<const Term> labels,
                 std::size_t label_context, const Faults& faults = {});

/// Multiplication derived as {id}, applied to the substitution's images.
Term subst_hss(const Term& t, const Substitution& c, const Faults& faults = {});

enum class Engine { Oracle, Hss };

const char* to_string(Engine engine);

Term substitute(Engine engine, const Term& t, const Substitution& c, const Faults& faults = {});

/// Kleisli composite: level i goes to substitute(c[i], d).
Substitution compose(const Substitution& c, const Substitution& d, Engine engine = Engine::Oracle,
                     const Faults& faults = {});

}  // namespace initsem
