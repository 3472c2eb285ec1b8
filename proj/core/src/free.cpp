#include "initsem/free.hpp"

#include <set>

#include "initsem/error.hpp"
#include "scanner.hpp"

namespace initsem {

GeneratorSet::GeneratorSet(std::vector<std::pair<std::string, std::size_t>> shapes)
    : shapes_(std::move(shapes)) {
  std::set<std::string> seen;
  for (const auto& [name, arity] : shapes_) {
    if (!seen.insert(name).second) throw Error(ErrorKind::Duplicate, "duplicate generator " + name);
  }
}

Signature GeneratorSet::as_signature() const {
  std::vector<Constructor> cons;
  for (const auto& [name, arity] : shapes_) {
    cons.push_back({name, Arity{std::vector<std::size_t>(arity, 0)}});
  }
  return Signature("gens", std::move(cons));
}

GeneratorSet parse_generators(std::string_view text) {
  detail::Scanner s(text);
  std::vector<std::pair<std::string, std::size_t>> shapes;
  if (s.at_end()) return GeneratorSet{};
  do {
    std::string name = s.expect_ident("generator name");
    s.expect(":");
    shapes.emplace_back(std::move(name), s.expect_nat("generator arity"));
  } while (s.accept(","));
  if (!s.at_end()) s.fail("expected ',' or end of generators" + s.found());
  return GeneratorSet(std::move(shapes));
}

std::string print_generators(const GeneratorSet& gens) {
  std::string out;
  for (const auto& [name, arity] : gens.shapes()) {
    if (!out.empty()) out += ",";
    out += name + ":" + std::to_string(arity);
  }
  return out;
}

Term FreeModel::unit(std::string_view shape) const {
  auto it = shape_constructor.find(std::string(shape));
  if (it == shape_constructor.end()) {
    throw Error(ErrorKind::UnknownConstructor, "unknown generator " + std::string(shape));
  }
  std::size_t a = extended.at(it->second).arity.size();
  std::vector<Term> args;
  for (std::size_t i = 0; i < a; ++i) args.push_back(Term::var(i, a));
  return make_con(extended, it->second, std::move(args), a);
}

FreeModel free_model(const Signature& sig, const GeneratorSet& gens,
                     const SubstEngineOptions& options) {
  SignatureSum s = sum_signatures(sig, gens.as_signature());
  FreeModel out;
  out.extended = s.sum;
  for (const auto& [name, arity] : gens.shapes()) out.shape_constructor[name] = s.right.apply(name);
  out.model = initial_model(s.sum, options);
  out.as_sig_model = pullback_model(s.left, out.model);
  return out;
}

Assignment parse_assignment(const Model& model, const GeneratorSet& gens, std::string_view text) {
  Assignment out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view part = text.substr(start, end - start);
    start = end + 1;
    if (part.find_first_not_of(" \t\n") == std::string_view::npos) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(1, 1, "expected NAME=ELEMENT in assignment");
    std::string name(part.substr(0, eq));
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    const std::pair<std::string, std::size_t>* shape = nullptr;
    for (const auto& sh : gens.shapes()) {
      if (sh.first == name) shape = &sh;
    }
    if (!shape) throw Error(ErrorKind::UnknownConstructor, "unknown generator " + name);
    if (out.contains(name)) throw Error(ErrorKind::Duplicate, "generator " + name + " assigned twice");
    out.emplace(name, model.parse_element(part.substr(eq + 1), shape->second));
  }
  for (const auto& [name, arity] : gens.shapes()) {
    if (!out.contains(name)) throw Error(ErrorKind::Usage, "generator " + name + " is not assigned");
  }
  return out;
}

namespace {

class TransposeModel final : public Model {
 public:
  TransposeModel(const FreeModel& free, ModelPtr model, Assignment f, Faults faults)
      : sig_(free.extended), model_(std::move(model)), f_(std::move(f)), faults_(faults) {
    for (const auto& [shape, con] : free.shape_constructor) shape_of_[con] = shape;
  }
  std::string name() const override { return "transpose(" + model_->name() + ")"; }
  const Signature& signature() const override { return sig_; }
  Value var(std::size_t i, std::size_t n) const override { return model_->var(i, n); }
  Value op(std::string_view c, std::span<const Value> args, std::size_t n) const override {
    auto it = shape_of_.find(std::string(c));
    if (it == shape_of_.end()) return model_->op(c, args, n);
    std::vector<Value> images(args.begin(), args.end());
    if (faults_.adjunction_collapse_args) {
      for (auto& v : images) v = args[0];
    }
    return model_->subst(f_.at(it->second), images, n);
  }
  Value rename(const Value& v, const Renaming& r) const override { return model_->rename(v, r); }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    return model_->subst(v, images, target);
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    return model_->parse_element(text, n);
  }

 private:
  Signature sig_;
  ModelPtr model_;
  Assignment f_;
  Faults faults_;
  std::map<std::string, std::string> shape_of_;
};

}  // namespace

ModelPtr transpose_model(const FreeModel& free, ModelPtr model, const Assignment& f,
                         const Faults& faults) {
  return std::make_shared<TransposeModel>(free, std::move(model), f, faults);
}

Assignment restrict_to_generators(const FreeModel& free, const GeneratorSet& gens,
                                  const std::function<Value(const Term&)>& g) {
  Assignment out;
  for (const auto& [name, arity] : gens.shapes()) out.emplace(name, g(free.unit(name)));
  return out;
}

LawReport adjunction_roundtrip(const Signature& sig, const GeneratorSet& gens, ModelPtr model,
                               const Assignment& f, const LawBounds& bounds, const Faults& faults) {
  if (!(model->signature() == sig)) {
    throw Error(ErrorKind::Morphism, "model " + model->name() + " is not a model of " + sig.name());
  }
  LawReport report("adjunction", sig.name());
  bounds.describe(report);
  report.set_parameter("generators", print_generators(gens));
  report.set_parameter("model", model->name());

  FreeModel free = free_model(sig, gens);
  ModelPtr k = transpose_model(free, model, f, faults);

  LawResult& lk = report.law("L-after-K");
  for (const auto& [name, arity] : gens.shapes()) {
    lk.check([&]() -> std::optional<Counterexample> {
      Value lhs = fold(*k, free.unit(name));
      const Value& rhs = f.at(name);
      if (lhs == rhs) return std::nullopt;
      return Counterexample{{{"generator", name}, {"f", to_string(rhs)}}, to_string(lhs),
                            to_string(rhs)};
    });
  }

  auto g = [&](const Term& t) { return fold(*k, t); };
  ModelPtr klg = transpose_model(free, model, restrict_to_generators(free, gens, g), faults);
  LawResult& kl = report.law("K-after-L");
  kl.mark_sampled();
  TermUniverse universe(free.extended, bounds.cap);
  SplitMix64 rng(bounds.seed);
  std::vector<std::size_t> contexts;
  for (std::size_t n = 0; n <= bounds.max_context; ++n) {
    if (universe.count(n, bounds.max_height) > 0) contexts.push_back(n);
  }
  std::uint64_t samples = std::max<std::uint64_t>(bounds.samples, 1000);
  for (std::uint64_t s = 0; !contexts.empty() && s < samples; ++s) {
    std::size_t n = contexts[rng.below(contexts.size())];
    Term t = universe.sample(n, bounds.max_height, rng);
    kl.check([&]() -> std::optional<Counterexample> {
      Value lhs = fold(*klg, t);
      Value rhs = g(t);
      if (lhs == rhs) return std::nullopt;
      return Counterexample{{{"t", print_term(t)}, {"context", std::to_string(n)}},
                            to_string(lhs), to_string(rhs)};
    });
  }

  report.absorb(check_model_morphism(*k, bounds), "K-model-morphism.");
  return report;
}

}  // namespace initsem
