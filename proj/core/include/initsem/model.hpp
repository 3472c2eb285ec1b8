#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "initsem/laws.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"
#include "initsem/subst.hpp"
#include "initsem/term.hpp"
#include "initsem/value.hpp"

namespace initsem {

/// A model of a signature: a monoid on context-indexed carriers (var is the
/// unit, subst the multiplication) with a module morphism `op` per
/// constructor. Implementations are immutable and safe for concurrent reads.
/// The contract is trusted only after run_model_law_suite passes.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual const Signature& signature() const = 0;

  virtual Value var(std::size_t level, std::size_t context) const = 0;
  /// args[j] lives over context + binders_j of the constructor.
  virtual Value op(std::string_view constructor, std::span<const Value> args,
                   std::size_t context) const = 0;
  virtual Value rename(const Value& v, const Renaming& r) const = 0;
  /// `v` lives over images.size(); every image lives over `target`.
  virtual Value subst(const Value& v, std::span<const Value> images,
                      std::size_t target) const = 0;

  /// Reads a carrier element written in the model's own syntax. Throws
  /// Error(Usage) for models without one.
  virtual Value parse_element(std::string_view text, std::size_t context) const;
};

using ModelPtr = std::shared_ptr<const Model>;

/// Singleton carriers.
ModelPtr terminal_model(Signature sig);
/// The syntax itself; subst runs the chosen engine.
ModelPtr initial_model(Signature sig, SubstEngineOptions options = {});
/// Carrier: finite sets of levels; fold computes the free variables.
ModelPtr support_model(Signature sig);
/// Carrier at n: n + sum_c prod_j inner(n + m_j). Unit is the left injection;
/// constructors go through [var, op] of the inner model and then right.
ModelPtr fixpoint_model(ModelPtr inner);
/// A model of h.source: constructor c acts as h(c) in `target`.
ModelPtr pullback_model(SignatureMorphism h, ModelPtr target);
/// `model-op-ignore-arg`: op replaces a first argument over a non-empty
/// context by the variable at level 0.
ModelPtr faulty_model(ModelPtr inner);
/// Wraps `model` in faulty_model when the fault is enabled.
ModelPtr apply_model_faults(ModelPtr model, const Faults& faults);

/// [var, op] of `inner` applied to one fixpoint-carrier element.
Value fixpoint_collapse(const Model& inner, const Value& v);

/// The initiality fold, by structural recursion.
Value fold(const Model& m, const Term& t);
/// The same fold with an explicit stack; used as a second procedure for the
/// uniqueness check.
Value fold_iterative(const Model& m, const Term& t);

/// Images moved under m binders: each renamed along target -> target + m,
/// followed by the m fresh variables.
std::vector<Value> weaken_images(const Model& model, std::span<const Value> images,
                                 std::size_t target, std::size_t binders);

/// Monoid laws (units, associativity), renaming as substitution, and the
/// module-morphism law for every constructor, on carrier elements obtained
/// by folding the bounded term universe.
LawReport run_model_law_suite(const Model& model, const LawBounds& bounds);

/// fold(Var i) = var(i); fold(c(args)) = op(c, fold args);
/// fold(subst(t, c)) = subst(fold t, fold . c); fold(rename(t, r)) =
/// rename(fold t, r); recursive and iterative folds agree.
/// `syntax` selects the engine (and faults) used on the term side.
LawReport check_model_morphism(const Model& model, const LawBounds& bounds,
                               const SubstEngineOptions& syntax = {});

/// A fold that refuses to run against a model whose law suite fails at the
/// given bounds, unless explicitly allowed.
class CertifiedFold {
 public:
  /// Throws Error(Uncertified) when the suite fails and `allow_uncertified`
  /// is false.
  CertifiedFold(ModelPtr model, const LawBounds& bounds, bool allow_uncertified = false);

  Value operator()(const Term& t) const { return fold(*model_, t); }
  bool certified() const { return certificate_.passed(); }
  const LawReport& certificate() const { return certificate_; }
  const Model& model() const { return *model_; }

 private:
  ModelPtr model_;
  LawReport certificate_;
};

}  // namespace initsem
