#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "initsem/laws.hpp"
#include "initsem/model.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"

namespace initsem {

/// Binder-free generator shapes: name -> arity, in declaration order.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  /// Throws Error(Duplicate) on a repeated name.
  explicit GeneratorSet(std::vector<std::pair<std::string, std::size_t>> shapes);

  std::span<const std::pair<std::string, std::size_t>> shapes() const { return shapes_; }
  std::size_t size() const { return shapes_.size(); }
  bool empty() const { return shapes_.empty(); }
  /// The shapes as constructors with `arity` zero-binder arguments.
  Signature as_signature() const;

 private:
  std::vector<std::pair<std::string, std::size_t>> shapes_;
};

/// `name:arity,name:arity`; the empty string is the empty set.
GeneratorSet parse_generators(std::string_view text);
std::string print_generators(const GeneratorSet& gens);

struct FreeModel {
  /// sig + generators; a generator whose name clashes is qualified as in sums.
  Signature extended;
  /// Generator name -> constructor name in `extended`.
  std::map<std::string, std::string> shape_constructor;
  /// The initial model of `extended`.
  ModelPtr model;
  /// The same carrier seen as a model of sig.
  ModelPtr as_sig_model;

  /// The unit: shape s of arity a goes to s(x0, ..., x(a-1)) over a.
  Term unit(std::string_view shape) const;
};

FreeModel free_model(const Signature& sig, const GeneratorSet& gens,
                     const SubstEngineOptions& options = {});

/// Generator name -> element of the model over context = arity.
using Assignment = std::map<std::string, Value>;

/// `name=ELEMENT;name=ELEMENT` in the model's element syntax; every shape
/// must be assigned exactly once.
Assignment parse_assignment(const Model& model, const GeneratorSet& gens, std::string_view text);

/// K(f): the model of sig + generators that acts as `model` on sig and
/// interprets shape s as subst(f(s), args). Folding into it is the
/// transpose of f.
ModelPtr transpose_model(const FreeModel& free, ModelPtr model, const Assignment& f,
                         const Faults& faults = {});

/// L(g): s -> g(unit(s)).
Assignment restrict_to_generators(const FreeModel& free, const GeneratorSet& gens,
                                  const std::function<Value(const Term&)>& g);

/// L(K(f)) = f on every shape; K(L(g)) = g on sampled terms of the free
/// model for g = K(f); K(f) is a model morphism.
LawReport adjunction_roundtrip(const Signature& sig, const GeneratorSet& gens, ModelPtr model,
                               const Assignment& f, const LawBounds& bounds,
                               const Faults& faults = {});

}  // namespace initsem
