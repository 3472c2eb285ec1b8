#include "initsem/lambek.hpp"

#include "initsem/error.hpp"
#include "initsem/model.hpp"

#include <unordered_set>

namespace initsem {

Term roll(const Signature& sig, const Layer& layer, std::size_t context) {
  if (layer.variable) return make_var(*layer.variable, context);
  return make_con(sig, layer.constructor, layer.args, context);
}

Layer unroll(const Term& t) {
  Layer out;
  if (t.is_var()) {
    out.variable = t.level();
  } else {
    out.constructor = t.constructor();
    out.args.assign(t.args().begin(), t.args().end());
  }
  return out;
}

namespace {

std::string show(const Layer& x) {
  if (x.variable) return "inl x" + std::to_string(*x.variable);
  std::string out = "inr " + x.constructor + "(";
  for (std::size_t j = 0; j < x.args.size(); ++j) {
    if (j) out += ", ";
    out += print_term(x.args[j]);
  }
  return out + ")";
}

bool same(const Layer& a, const Layer& b) {
  return a.variable == b.variable && a.constructor == b.constructor && a.args == b.args;
}

class LambekCheck {
 public:
  LambekCheck(const Signature& sig, std::size_t n, std::size_t k, const LambekOptions& options)
      : sig_(sig), n_(n), k_(k), options_(options), universe_(sig, options.cap),
        fixpoint_(fixpoint_model(initial_model(sig))), initial_(initial_model(sig)),
        report_("lambek", sig.name()) {
    report_.set_parameter("context", std::to_string(n));
    report_.set_parameter("height", std::to_string(k));
    report_.set_parameter("cap", std::to_string(options.cap));
  }

  LawReport run() {
    std::uint64_t lhs = domain_size();
    std::uint64_t rhs = universe_.count(n_, k_ + 1);
    bool exact = rhs <= options_.cap;
    if (exact) rhs = universe_.terms(n_, k_ + 1).size();
    report_.set_stat("lhs_cardinality", lhs);
    report_.set_stat("rhs_cardinality", rhs);
    report_.law("cardinality").check([&]() -> std::optional<Counterexample> {
      if (lhs == rhs) return std::nullopt;
      return Counterexample{{{"context", std::to_string(n_)}, {"height", std::to_string(k_)}},
                            std::to_string(lhs), std::to_string(rhs)};
    });
    if (lhs != rhs) return std::move(report_);
    if (exact) {
      stream_all();
    } else {
      sample(lhs);
    }
    return std::move(report_);
  }

 private:
  // Arguments of height <= k over `context`: the enumerated list when it fits.
  bool listed(std::size_t context) { return universe_.count(context, k_) <= options_.cap; }

  Term argument(std::size_t context, std::uint64_t index) {
    if (listed(context)) return universe_.terms(context, k_)[index];
    return universe_.unrank(context, k_, index);
  }

  std::uint64_t size_of(std::size_t context) {
    return listed(context) ? universe_.terms(context, k_).size() : universe_.count(context, k_);
  }

  std::uint64_t domain_size() {
    std::uint64_t total = n_;
    for (const auto& c : sig_.constructors()) {
      std::uint64_t block = 1;
      for (std::size_t m : c.arity.binders) block = checked_mul(block, size_of(n_ + m));
      total = checked_add(total, block);
    }
    return total;
  }

  // Position `index` of I + Sigma(T_k) in enumeration order.
  Layer decode(std::uint64_t index) {
    Layer x;
    if (index < n_) {
      x.variable = index;
      return x;
    }
    index -= n_;
    for (const auto& c : sig_.constructors()) {
      std::uint64_t block = 1;
      for (std::size_t m : c.arity.binders) block = checked_mul(block, size_of(n_ + m));
      if (index >= block) {
        index -= block;
        continue;
      }
      x.constructor = c.name;
      x.args.resize(c.arity.size());
      for (std::size_t j = c.arity.size(); j-- > 0;) {
        std::uint64_t size = size_of(n_ + c.arity.binders[j]);
        x.args[j] = argument(n_ + c.arity.binders[j], index % size);
        index /= size;
      }
      return x;
    }
    throw Error(ErrorKind::Resource, "lambek: index out of range");
  }

  void check_output(const Term& t) {
    report_.law("unique-decomposition").check([&]() -> std::optional<Counterexample> {
      Layer x = unroll(t);
      bool low = true;
      for (const auto& a : x.args) low = low && a.height() <= k_;
      Term back = roll(sig_, x, n_);
      if (low && back == t) return std::nullopt;
      return Counterexample{{{"t", print_term(t)}}, print_term(back), print_term(t)};
    });
    report_.law("fixpoint-collapse").check([&]() -> std::optional<Counterexample> {
      Value v = fold(*fixpoint_, t);
      Term back = fixpoint_collapse(*initial_, v).term();
      if (back == t) return std::nullopt;
      return Counterexample{{{"t", print_term(t)}, {"fixpoint", to_string(v)}}, print_term(back),
                            print_term(t)};
    });
  }

  void stream_all() {
    const auto& outputs = universe_.terms(n_, k_ + 1);
    LawResult& bij = report_.law("bijection");
    std::uint64_t index = 0;
    auto visit = [&](const Layer& x) {
      bij.check([&]() -> std::optional<Counterexample> {
        Term t = roll(sig_, x, n_);
        if (index < outputs.size() && outputs[index] == t) return std::nullopt;
        return Counterexample{{{"input", show(x)}, {"index", std::to_string(index)}},
                              print_term(t),
                              index < outputs.size() ? print_term(outputs[index]) : "<none>"};
      });
      ++index;
    };
    for (std::size_t i = 0; i < n_; ++i) visit(Layer{i, {}, {}});
    for (const auto& c : sig_.constructors()) {
      std::vector<const std::vector<Term>*> pools;
      bool empty = false;
      for (std::size_t m : c.arity.binders) {
        pools.push_back(&universe_.terms(n_ + m, k_));
        empty = empty || pools.back()->empty();
      }
      if (empty) continue;
      std::vector<std::size_t> digit(pools.size(), 0);
      for (;;) {
        Layer x{std::nullopt, c.name, {}};
        for (std::size_t j = 0; j < pools.size(); ++j) x.args.push_back((*pools[j])[digit[j]]);
        visit(x);
        std::size_t j = pools.size();
        while (j > 0 && ++digit[j - 1] == pools[j - 1]->size()) digit[--j] = 0;
        if (j == 0) break;
      }
    }
    bij.check([&]() -> std::optional<Counterexample> {
      if (index == outputs.size()) return std::nullopt;
      return Counterexample{{{"inputs", std::to_string(index)}}, std::to_string(index),
                            std::to_string(outputs.size())};
    });
    for (const auto& t : outputs) check_output(t);
  }

  // Exact without streaming the product: the variable layers and, per
  // constructor and argument position, every element of that factor with the
  // other positions held fixed. Each such term must hand the element back and
  // rank inside its constructor's block; with equal cardinalities this makes
  // roll a bijection.
  void factorized() {
    LawResult& bij = report_.law("bijection");
    std::uint64_t offset = n_;
    for (std::size_t i = 0; i < n_; ++i) {
      bij.check([&]() -> std::optional<Counterexample> {
        Term t = roll(sig_, Layer{i, {}, {}}, n_);
        if (t.is_var() && t.level() == i && universe_.rank(t, k_ + 1) == i) return std::nullopt;
        return Counterexample{{{"input", "inl x" + std::to_string(i)}}, print_term(t),
                              "x" + std::to_string(i)};
      });
    }
    for (const auto& c : sig_.constructors()) {
      std::uint64_t block = 1;
      for (std::size_t m : c.arity.binders) block = checked_mul(block, size_of(n_ + m));
      if (block == 0) continue;
      std::vector<Term> base;
      for (std::size_t m : c.arity.binders) base.push_back(argument(n_ + m, 0));
      for (std::size_t j = 0; j < base.size(); ++j) {
        std::size_t context = n_ + c.arity.binders[j];
        std::uint64_t size = size_of(context);
        bool listed_all = listed(context);
        if (!listed_all) bij.mark_sampled();
        std::uint64_t visits = listed_all ? size : std::min<std::uint64_t>(size, options_.samples);
        SplitMix64 rng(options_.seed + j);
        std::unordered_set<Term, TermHash> seen;
        for (std::uint64_t v = 0; v < visits; ++v) {
          Term a = argument(context, listed_all ? v : rng.below(size));
          Layer x{std::nullopt, c.name, base};
          x.args[j] = a;
          bij.check([&]() -> std::optional<Counterexample> {
            Term t = roll(sig_, x, n_);
            bool fresh = !listed_all || seen.insert(a).second;
            std::uint64_t r = universe_.rank(t, k_ + 1);
            if (fresh && !t.is_var() && t.constructor() == c.name && t.args()[j] == a &&
                t.height() <= k_ + 1 && r >= offset && r - offset < block) {
              return std::nullopt;
            }
            return Counterexample{{{"input", show(x)}, {"argument", std::to_string(j)}},
                                  print_term(t) + " at " + std::to_string(r),
                                  "block " + c.name + " from " + std::to_string(offset)};
          });
        }
      }
      offset += block;
    }
  }

  void sample(std::uint64_t size) {
    factorized();
    SplitMix64 rng(options_.seed);
    LawResult& trip = report_.law("rank-roundtrip");
    trip.mark_sampled();
    report_.law("unique-decomposition").mark_sampled();
    report_.law("fixpoint-collapse").mark_sampled();
    for (std::uint64_t s = 0; s < options_.samples; ++s) {
      std::uint64_t index = rng.below(size);
      Layer x = decode(index);
      trip.check([&]() -> std::optional<Counterexample> {
        Term t = roll(sig_, x, n_);
        std::uint64_t r = universe_.rank(t, k_ + 1);
        Term u = universe_.unrank(n_, k_ + 1, index);
        if (r == index && u == t && same(unroll(t), x)) return std::nullopt;
        return Counterexample{{{"input", show(x)}, {"index", std::to_string(index)}},
                              print_term(t) + " at " + std::to_string(r), print_term(u)};
      });
      check_output(universe_.unrank(n_, k_ + 1, rng.below(size)));
    }
  }

  const Signature& sig_;
  std::size_t n_;
  std::size_t k_;
  LambekOptions options_;
  TermUniverse universe_;
  ModelPtr fixpoint_;
  ModelPtr initial_;
  LawReport report_;
};

}  // namespace

LawReport check_lambek(const Signature& sig, std::size_t context, std::size_t height,
                       const LambekOptions& options) {
  return LambekCheck(sig, context, height, options).run();
}

}  // namespace initsem
