#include "initsem/model.hpp"

#include <algorithm>

#include "initsem/error.hpp"
#include "scanner.hpp"

namespace initsem {

Value Model::parse_element(std::string_view, std::size_t) const {
  throw Error(ErrorKind::Usage, "model " + name() + " has no element syntax");
}

std::vector<Value> weaken_images(const Model& model, std::span<const Value> images,
                                 std::size_t target, std::size_t binders) {
  std::vector<Value> out;
  out.reserve(images.size() + binders);
  if (binders == 0) {
    out.assign(images.begin(), images.end());
    return out;
  }
  Renaming up = Renaming::inclusion(target, target + binders);
  for (const auto& v : images) out.push_back(model.rename(v, up));
  for (std::size_t p = 0; p < binders; ++p) out.push_back(model.var(target + p, target + binders));
  return out;
}

namespace {

class TerminalModel final : public Model {
 public:
  explicit TerminalModel(Signature sig) : sig_(std::move(sig)) {}
  std::string name() const override { return "terminal"; }
  const Signature& signature() const override { return sig_; }
  Value var(std::size_t, std::size_t n) const override { return Value::unit(n); }
  Value op(std::string_view, std::span<const Value>, std::size_t n) const override {
    return Value::unit(n);
  }
  Value rename(const Value&, const Renaming& r) const override { return Value::unit(r.target()); }
  Value subst(const Value&, std::span<const Value>, std::size_t target) const override {
    return Value::unit(target);
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    detail::Scanner s(text);
    s.expect("*");
    if (!s.at_end()) s.fail("expected end of element" + s.found());
    return Value::unit(n);
  }

 private:
  Signature sig_;
};

class InitialModel final : public Model {
 public:
  InitialModel(Signature sig, SubstEngineOptions options)
      : sig_(std::move(sig)), options_(options) {}
  std::string name() const override { return "initial"; }
  const Signature& signature() const override { return sig_; }
  Value var(std::size_t i, std::size_t n) const override { return Value::term(Term::var(i, n)); }
  Value op(std::string_view c, std::span<const Value> args, std::size_t n) const override {
    std::vector<Term> ts;
    ts.reserve(args.size());
    for (const auto& a : args) ts.push_back(a.term());
    return Value::term(make_con(sig_, c, std::move(ts), n));
  }
  Value rename(const Value& v, const Renaming& r) const override {
    return Value::term(initsem::rename(v.term(), r));
  }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    std::vector<Term> ts;
    ts.reserve(images.size());
    for (const auto& a : images) ts.push_back(a.term());
    Substitution c(images.size(), target, std::move(ts));
    return Value::term(substitute(options_.engine, v.term(), c, options_.faults));
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    return Value::term(parse_term(sig_, n, text));
  }

 private:
  Signature sig_;
  SubstEngineOptions options_;
};

class SupportModel final : public Model {
 public:
  explicit SupportModel(Signature sig) : sig_(std::move(sig)) {}
  std::string name() const override { return "support"; }
  const Signature& signature() const override { return sig_; }
  Value var(std::size_t i, std::size_t n) const override { return Value::set({i}, n); }
  Value op(std::string_view, std::span<const Value> args, std::size_t n) const override {
    std::vector<std::size_t> out;
    for (const auto& a : args) {
      for (std::size_t l : a.levels()) {
        if (l < n) out.push_back(l);
      }
    }
    return Value::set(std::move(out), n);
  }
  Value rename(const Value& v, const Renaming& r) const override {
    std::vector<std::size_t> out;
    for (std::size_t l : v.levels()) out.push_back(r(l));
    return Value::set(std::move(out), r.target());
  }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    std::vector<std::size_t> out;
    for (std::size_t l : v.levels()) {
      auto ls = images[l].levels();
      out.insert(out.end(), ls.begin(), ls.end());
    }
    return Value::set(std::move(out), target);
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    detail::Scanner s(text);
    s.expect("{");
    std::vector<std::size_t> levels;
    if (!s.accept("}")) {
      do {
        s.expect("x");
        levels.push_back(s.expect_nat("variable level"));
      } while (s.accept(","));
      s.expect("}");
    }
    if (!s.at_end()) s.fail("expected end of element" + s.found());
    return Value::set(std::move(levels), n);
  }

 private:
  Signature sig_;
};

class FixpointModel final : public Model {
 public:
  explicit FixpointModel(ModelPtr inner) : inner_(std::move(inner)) {}
  std::string name() const override { return "fixpoint:" + inner_->name(); }
  const Signature& signature() const override { return inner_->signature(); }
  Value var(std::size_t i, std::size_t n) const override { return Value::inl(i, n); }
  Value op(std::string_view c, std::span<const Value> args, std::size_t n) const override {
    std::vector<Value> inner;
    inner.reserve(args.size());
    for (const auto& a : args) inner.push_back(fixpoint_collapse(*inner_, a));
    return Value::inr(std::string(c), std::move(inner), n);
  }
  Value rename(const Value& v, const Renaming& r) const override {
    if (v.kind() == Value::Kind::Inl) return Value::inl(r(v.level()), r.target());
    const auto& arity = signature().at(v.constructor()).arity;
    std::vector<Value> args;
    for (std::size_t j = 0; j < v.args().size(); ++j) {
      args.push_back(inner_->rename(v.args()[j], r.extended(arity.binders[j])));
    }
    return Value::inr(v.constructor(), std::move(args), r.target());
  }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    if (v.kind() == Value::Kind::Inl) return images[v.level()];
    std::vector<Value> collapsed;
    collapsed.reserve(images.size());
    for (const auto& img : images) collapsed.push_back(fixpoint_collapse(*inner_, img));
    const auto& arity = signature().at(v.constructor()).arity;
    std::vector<Value> args;
    for (std::size_t j = 0; j < v.args().size(); ++j) {
      std::size_t m = arity.binders[j];
      args.push_back(inner_->subst(v.args()[j], weaken_images(*inner_, collapsed, target, m),
                                   target + m));
    }
    return Value::inr(v.constructor(), std::move(args), target);
  }

 private:
  ModelPtr inner_;
};

class PullbackModel final : public Model {
 public:
  PullbackModel(SignatureMorphism h, ModelPtr target) : h_(std::move(h)), target_(std::move(target)) {
    h_.validate();
    if (!(h_.target == target_->signature())) {
      throw Error(ErrorKind::Morphism, "pullback: morphism target " + h_.target.name() +
                                           " is not the model's signature " +
                                           target_->signature().name());
    }
  }
  std::string name() const override { return "pullback(" + target_->name() + ")"; }
  const Signature& signature() const override { return h_.source; }
  Value var(std::size_t i, std::size_t n) const override { return target_->var(i, n); }
  Value op(std::string_view c, std::span<const Value> args, std::size_t n) const override {
    return target_->op(h_.apply(c), args, n);
  }
  Value rename(const Value& v, const Renaming& r) const override { return target_->rename(v, r); }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    return target_->subst(v, images, target);
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    return target_->parse_element(text, n);
  }

 private:
  SignatureMorphism h_;
  ModelPtr target_;
};

class FaultyModel final : public Model {
 public:
  explicit FaultyModel(ModelPtr inner) : inner_(std::move(inner)) {}
  std::string name() const override { return inner_->name(); }
  const Signature& signature() const override { return inner_->signature(); }
  Value var(std::size_t i, std::size_t n) const override { return inner_->var(i, n); }
  Value op(std::string_view c, std::span<const Value> args, std::size_t n) const override {
    std::vector<Value> copy(args.begin(), args.end());
    if (!copy.empty() && copy[0].context() > 0) copy[0] = inner_->var(0, copy[0].context());
    return inner_->op(c, copy, n);
  }
  Value rename(const Value& v, const Renaming& r) const override { return inner_->rename(v, r); }
  Value subst(const Value& v, std::span<const Value> images, std::size_t target) const override {
    return inner_->subst(v, images, target);
  }
  Value parse_element(std::string_view text, std::size_t n) const override {
    return inner_->parse_element(text, n);
  }

 private:
  ModelPtr inner_;
};

}  // namespace

ModelPtr terminal_model(Signature sig) { return std::make_shared<TerminalModel>(std::move(sig)); }

ModelPtr initial_model(Signature sig, SubstEngineOptions options) {
  return std::make_shared<InitialModel>(std::move(sig), options);
}

ModelPtr support_model(Signature sig) { return std::make_shared<SupportModel>(std::move(sig)); }

ModelPtr fixpoint_model(ModelPtr inner) { return std::make_shared<FixpointModel>(std::move(inner)); }

ModelPtr pullback_model(SignatureMorphism h, ModelPtr target) {
  return std::make_shared<PullbackModel>(std::move(h), std::move(target));
}

ModelPtr faulty_model(ModelPtr inner) { return std::make_shared<FaultyModel>(std::move(inner)); }

ModelPtr apply_model_faults(ModelPtr model, const Faults& faults) {
  return faults.model_op_ignore_arg ? faulty_model(std::move(model)) : model;
}

Value fixpoint_collapse(const Model& inner, const Value& v) {
  if (v.kind() == Value::Kind::Inl) return inner.var(v.level(), v.context());
  if (v.kind() != Value::Kind::Inr) {
    throw Error(ErrorKind::Interpretation, "not a fixpoint element: " + to_string(v));
  }
  return inner.op(v.constructor(), v.args(), v.context());
}

Value fold(const Model& m, const Term& t) {
  if (t.is_var()) return m.var(t.level(), t.context());
  std::vector<Value> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(fold(m, a));
  return m.op(t.constructor(), args, t.context());
}

Value fold_iterative(const Model& m, const Term& t) {
  struct Frame {
    const Term* term;
    std::size_t next = 0;
    std::vector<Value> done;
  };
  std::vector<Frame> stack;
  stack.push_back({&t, 0, {}});
  Value result;
  while (!stack.empty()) {
    Frame& top = stack.back();
    const Term& cur = *top.term;
    if (cur.is_var() || top.next == cur.args().size()) {
      Value v = cur.is_var() ? m.var(cur.level(), cur.context())
                             : m.op(cur.constructor(), top.done, cur.context());
      stack.pop_back();
      if (stack.empty()) {
        result = std::move(v);
      } else {
        stack.back().done.push_back(std::move(v));
      }
      continue;
    }
    const Term* child = &cur.args()[top.next++];
    stack.push_back({child, 0, {}});
  }
  return result;
}

}  // namespace initsem
