#include <algorithm>
#include <map>
#include <unordered_set>

#include "initsem/error.hpp"
#include "initsem/model.hpp"

namespace initsem {

namespace {

std::string nat(std::size_t n) { return std::to_string(n); }

std::string show(std::span<const Value> vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ";";
    out += "x" + nat(i) + "=" + to_string(vs[i]);
  }
  return out;
}

std::vector<Value> variables(const Model& m, std::size_t n) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(m.var(i, n));
  return out;
}

// Carrier elements reachable by folding the bounded term universe, without
// duplicates, in enumeration order.
class ElementPool {
 public:
  ElementPool(const Model& model, const LawBounds& bounds)
      : model_(model), bounds_(bounds), universe_(model.signature(), bounds.cap), rng_(bounds.seed ^ 0xe1e) {}

  const std::vector<Value>& get(std::size_t n, std::size_t h, LawResult& law) {
    auto key = std::make_pair(n, h);
    auto it = pools_.find(key);
    if (it == pools_.end()) it = pools_.emplace(key, build(n, h)).first;
    if (!it->second.second) law.mark_sampled();
    return it->second.first;
  }

 private:
  std::pair<std::vector<Value>, bool> build(std::size_t n, std::size_t h) {
    std::vector<Term> terms;
    bool complete = bounds_.exhaustive && universe_.count(n, h) <= bounds_.cap;
    if (complete) {
      terms = universe_.terms(n, h);
    } else if (universe_.count(n, h) > 0) {
      std::uint64_t draws = std::max<std::uint64_t>(bounds_.samples, bounds_.pool_cap);
      for (std::uint64_t s = 0; s < draws; ++s) terms.push_back(universe_.sample(n, h, rng_));
    }
    std::vector<Value> out;
    std::unordered_set<std::string> seen;
    for (const auto& t : terms) {
      Value v = fold(model_, t);
      if (seen.insert(to_string(v)).second) out.push_back(std::move(v));
    }
    return {std::move(out), complete};
  }

  const Model& model_;
  LawBounds bounds_;
  TermUniverse universe_;
  SplitMix64 rng_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::vector<Value>, bool>> pools_;
};

class ModelSuite {
 public:
  ModelSuite(const Model& model, const LawBounds& bounds)
      : m_(model), bounds_(bounds), pool_(model, bounds), rng_(bounds.seed),
        report_("model-laws", model.signature().name()) {
    bounds.describe(report_);
    report_.set_parameter("model", model.name());
  }

  LawReport run() {
    units();
    associativity();
    renaming();
    module_morphisms();
    return std::move(report_);
  }

 private:
  std::size_t N() const { return bounds_.max_context; }

  std::uint64_t budget(std::size_t subjects) const {
    std::uint64_t b = bounds_.per_term_budget;
    if (subjects > 0) b = std::min<std::uint64_t>(b, bounds_.case_budget / subjects);
    return std::max<std::uint64_t>(b, 1);
  }

  void tuples(LawResult& law, std::uint64_t budget, const std::vector<std::size_t>& sizes,
              const std::function<void(std::span<const std::size_t>)>& visit) {
    if (!for_each_tuple(sizes, budget, rng_, visit)) law.mark_sampled();
  }

  std::vector<Value> pick(const std::vector<Value>& pool, std::span<const std::size_t> ix,
                          std::size_t from, std::size_t count) {
    std::vector<Value> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[ix[from + i]]);
    return out;
  }

  void units() {
    LawResult& right = report_.law("right-unit");
    LawResult& left = report_.law("left-unit");
    for (std::size_t n = 0; n <= N(); ++n) {
      auto vars = variables(m_, n);
      for (const auto& v : pool_.get(n, bounds_.max_height, right)) {
        right.check([&]() -> std::optional<Counterexample> {
          Value r = m_.subst(v, vars, n);
          if (r == v) return std::nullopt;
          return Counterexample{{{"v", to_string(v)}, {"context", nat(n)}}, to_string(r), to_string(v)};
        });
      }
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        const auto& imgs = pool_.get(n1, bounds_.subst_height, left);
        for (std::size_t i = 0; i < n; ++i) {
          tuples(left, bounds_.per_term_budget, std::vector<std::size_t>(n, imgs.size()),
                 [&](std::span<const std::size_t> ix) {
                   auto images = pick(imgs, ix, 0, n);
                   left.check([&]() -> std::optional<Counterexample> {
                     Value r = m_.subst(m_.var(i, n), images, n1);
                     if (r == images[i]) return std::nullopt;
                     return Counterexample{{{"v", "x" + nat(i)}, {"images", show(images)}},
                                           to_string(r), to_string(images[i])};
                   });
                 });
        }
      }
    }
  }

  void associativity() {
    LawResult& law = report_.law("associativity");
    for (std::size_t n = 0; n <= N(); ++n) {
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        for (std::size_t n2 = 0; n2 <= N(); ++n2) {
          const auto& vs = pool_.get(n, bounds_.max_height, law);
          const auto& as = pool_.get(n1, bounds_.subst_height, law);
          const auto& bs = pool_.get(n2, bounds_.subst_height, law);
          std::vector<std::size_t> sizes(n, as.size());
          sizes.insert(sizes.end(), n1, bs.size());
          for (const auto& v : vs) {
            tuples(law, budget(vs.size()), sizes, [&](std::span<const std::size_t> ix) {
              auto a = pick(as, ix, 0, n);
              auto b = pick(bs, ix, n, n1);
              law.check([&]() -> std::optional<Counterexample> {
                Value lhs = m_.subst(m_.subst(v, a, n1), b, n2);
                std::vector<Value> ab;
                for (const auto& x : a) ab.push_back(m_.subst(x, b, n2));
                Value rhs = m_.subst(v, ab, n2);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"v", to_string(v)}, {"a", show(a)}, {"b", show(b)}},
                                      to_string(lhs), to_string(rhs)};
              });
            });
          }
        }
      }
    }
  }

  void renaming() {
    LawResult& id = report_.law("rename-identity");
    LawResult& as_subst = report_.law("rename-as-subst");
    for (std::size_t n = 0; n <= N(); ++n) {
      const auto& vs = pool_.get(n, bounds_.max_height, id);
      for (const auto& v : vs) {
        id.check([&]() -> std::optional<Counterexample> {
          Value r = m_.rename(v, Renaming::identity(n));
          if (r == v) return std::nullopt;
          return Counterexample{{{"v", to_string(v)}}, to_string(r), to_string(v)};
        });
      }
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        auto rs = all_renamings(n, n1);
        for (const auto& v : pool_.get(n, bounds_.max_height, as_subst)) {
          tuples(as_subst, budget(vs.size()), {rs.size()}, [&](std::span<const std::size_t> ix) {
            const Renaming& r = rs[ix[0]];
            as_subst.check([&]() -> std::optional<Counterexample> {
              std::vector<Value> images;
              for (std::size_t i = 0; i < n; ++i) images.push_back(m_.var(r(i), n1));
              Value lhs = m_.rename(v, r);
              Value rhs = m_.subst(v, images, n1);
              if (lhs == rhs) return std::nullopt;
              return Counterexample{{{"v", to_string(v)}, {"r", print_renaming(r)}},
                                    to_string(lhs), to_string(rhs)};
            });
          });
        }
      }
    }
  }

  // subst(op(c, args), s) = op(c, [subst(arg_j, s weakened under m_j)]).
  void module_morphisms() {
    for (const auto& c : m_.signature().constructors()) {
      LawResult& law = report_.law("module-morphism-" + c.name);
      const auto& ms = c.arity.binders;
      for (std::size_t n = 0; n <= N(); ++n) {
        for (std::size_t n1 = 0; n1 <= N(); ++n1) {
          std::vector<const std::vector<Value>*> arg_pools;
          std::vector<std::size_t> sizes;
          std::size_t h = bounds_.max_height > 1 ? bounds_.max_height - 1 : 1;
          for (std::size_t m : ms) {
            arg_pools.push_back(&pool_.get(n + m, h, law));
            sizes.push_back(arg_pools.back()->size());
          }
          const auto& imgs = pool_.get(n1, bounds_.subst_height, law);
          sizes.insert(sizes.end(), n, imgs.size());
          tuples(law, bounds_.case_budget / 4 + 1, sizes, [&](std::span<const std::size_t> ix) {
            std::vector<Value> args;
            for (std::size_t j = 0; j < ms.size(); ++j) args.push_back((*arg_pools[j])[ix[j]]);
            auto images = pick(imgs, ix, ms.size(), n);
            law.check([&]() -> std::optional<Counterexample> {
              Value lhs = m_.subst(m_.op(c.name, args, n), images, n1);
              std::vector<Value> moved;
              for (std::size_t j = 0; j < ms.size(); ++j) {
                moved.push_back(
                    m_.subst(args[j], weaken_images(m_, images, n1, ms[j]), n1 + ms[j]));
              }
              Value rhs = m_.op(c.name, moved, n1);
              if (lhs == rhs) return std::nullopt;
              return Counterexample{{{"args", show(args)}, {"context", nat(n)},
                                     {"images", show(images)}},
                                    to_string(lhs), to_string(rhs)};
            });
          });
        }
      }
    }
  }

  const Model& m_;
  LawBounds bounds_;
  ElementPool pool_;
  SplitMix64 rng_;
  LawReport report_;
};

std::vector<Value> fold_all(const Model& m, std::span<const Term> ts) {
  std::vector<Value> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(fold(m, t));
  return out;
}

}  // namespace

LawReport run_model_law_suite(const Model& model, const LawBounds& bounds) {
  return ModelSuite(model, bounds).run();
}

LawReport check_model_morphism(const Model& model, const LawBounds& bounds,
                               const SubstEngineOptions& syntax) {
  const Signature& sig = model.signature();
  LawReport report("model-morphism", sig.name());
  bounds.describe(report);
  report.set_parameter("model", model.name());
  TermUniverse universe(sig, bounds.cap);
  SubstitutionPool pool(universe, bounds.subst_height, bounds.pool_cap, bounds.seed ^ 0x5eed);
  SplitMix64 rng(bounds.seed);

  LawResult& var = report.law("fold-var");
  LawResult& op = report.law("fold-op");
  LawResult& sub = report.law("fold-subst");
  LawResult& ren = report.law("fold-rename");
  LawResult& agree = report.law("fold-agreement");

  auto budget = [&](std::size_t subjects) {
    std::uint64_t b = bounds.per_term_budget;
    if (subjects > 0) b = std::min<std::uint64_t>(b, bounds.case_budget / subjects);
    return std::max<std::uint64_t>(b, 1);
  };

  for (std::size_t n = 0; n <= bounds.max_context; ++n) {
    for (std::size_t i = 0; i < n; ++i) {
      var.check([&]() -> std::optional<Counterexample> {
        Value lhs = fold(model, Term::var(i, n));
        Value rhs = model.var(i, n);
        if (lhs == rhs) return std::nullopt;
        return Counterexample{{{"t", "x" + nat(i)}, {"context", nat(n)}}, to_string(lhs),
                              to_string(rhs)};
      });
    }
    std::vector<Term> ts;
    if (bounds.exhaustive) {
      ts = universe.terms(n, bounds.max_height);
    } else if (universe.count(n, bounds.max_height) > 0) {
      for (LawResult* l : {&var, &op, &sub, &ren, &agree}) l->mark_sampled();
      for (std::uint64_t s = 0; s < bounds.samples; ++s) {
        ts.push_back(universe.sample(n, bounds.max_height, rng));
      }
    }
    for (const auto& t : ts) {
      Value ft = fold(model, t);
      agree.check([&]() -> std::optional<Counterexample> {
        Value other = fold_iterative(model, t);
        if (other == ft) return std::nullopt;
        return Counterexample{{{"t", print_term(t)}, {"context", nat(n)}}, to_string(ft),
                              to_string(other)};
      });
      if (!t.is_var()) {
        op.check([&]() -> std::optional<Counterexample> {
          Value rhs = model.op(t.constructor(), fold_all(model, t.args()), n);
          if (ft == rhs) return std::nullopt;
          return Counterexample{{{"t", print_term(t)}, {"context", nat(n)}}, to_string(ft),
                                to_string(rhs)};
        });
      }
      for (std::size_t n1 = 0; n1 <= bounds.max_context; ++n1) {
        if (!pool.complete(n, n1)) sub.mark_sampled();
        const auto& cs = pool.get(n, n1);
        std::vector<std::size_t> one{cs.size()};
        bool all = for_each_tuple(one, budget(ts.size()), rng, [&](std::span<const std::size_t> ix) {
          const Substitution& c = cs[ix[0]];
          sub.check([&]() -> std::optional<Counterexample> {
            Value lhs = fold(model, substitute(syntax.engine, t, c, syntax.faults));
            Value rhs = model.subst(ft, fold_all(model, c.images()), n1);
            if (lhs == rhs) return std::nullopt;
            return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                   {"c", print_substitution(c)}, {"c.target", nat(n1)}},
                                  to_string(lhs), to_string(rhs)};
          });
        });
        if (!all) sub.mark_sampled();
        auto rs = all_renamings(n, n1);
        std::vector<std::size_t> rsize{rs.size()};
        all = for_each_tuple(rsize, budget(ts.size()), rng, [&](std::span<const std::size_t> ix) {
          const Renaming& r = rs[ix[0]];
          ren.check([&]() -> std::optional<Counterexample> {
            Value lhs = fold(model, rename(t, r));
            Value rhs = model.rename(ft, r);
            if (lhs == rhs) return std::nullopt;
            return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                   {"r", print_renaming(r)}},
                                  to_string(lhs), to_string(rhs)};
          });
        });
        if (!all) ren.mark_sampled();
      }
    }
  }
  return report;
}

CertifiedFold::CertifiedFold(ModelPtr model, const LawBounds& bounds, bool allow_uncertified)
    : model_(std::move(model)), certificate_(run_model_law_suite(*model_, bounds)) {
  if (!certificate_.passed() && !allow_uncertified) {
    throw Error(ErrorKind::Uncertified,
                "model " + model_->name() + " fails its law suite (" +
                    std::to_string(certificate_.failure_count()) +
                    " counterexamples); refusing to fold without --allow-uncertified");
  }
}

}  // namespace initsem
