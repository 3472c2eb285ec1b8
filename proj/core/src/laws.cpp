#include "initsem/laws.hpp"

#include <algorithm>

#include "initsem/error.hpp"

namespace initsem {

void LawBounds::describe(LawReport& report) const {
  report.set_parameter("max_context", std::to_string(max_context));
  report.set_parameter("max_height", std::to_string(max_height));
  report.set_parameter("subst_height", std::to_string(subst_height));
  report.set_parameter("exhaustive", exhaustive ? "true" : "false");
  report.set_parameter("samples", std::to_string(samples));
  report.set_parameter("seed", std::to_string(seed));
  report.set_parameter("per_term_budget", std::to_string(per_term_budget));
  report.set_parameter("case_budget", std::to_string(case_budget));
}

SubstitutionPool::SubstitutionPool(TermUniverse& universe, std::size_t height,
                                   std::uint64_t pool_cap, std::uint64_t seed)
    : universe_(universe), height_(height), pool_cap_(pool_cap), seed_(seed) {}

const std::vector<Substitution>& SubstitutionPool::get(std::size_t source, std::size_t target) {
  auto key = std::make_pair(source, target);
  if (auto it = pools_.find(key); it != pools_.end()) return it->second.first;

  std::uint64_t images = universe_.count(target, height_);
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < source; ++i) {
    if (images != 0 && total > pool_cap_ / images + 1) {
      overflow = true;
      break;
    }
    total *= images;
  }
  std::vector<Substitution> out;
  bool complete = !overflow && total <= pool_cap_;
  if (complete) {
    if (source == 0 || images > 0) {
      const auto& pool = universe_.terms(target, height_);
      std::vector<std::size_t> digit(source, 0);
      for (;;) {
        std::vector<Term> chosen;
        chosen.reserve(source);
        for (std::size_t i = 0; i < source; ++i) chosen.push_back(pool[digit[i]]);
        out.emplace_back(source, target, std::move(chosen));
        std::size_t j = source;
        while (j > 0 && ++digit[j - 1] == pool.size()) digit[--j] = 0;
        if (j == 0) break;
      }
    }
  } else {
    SplitMix64 rng(seed_ ^ (source * 0x100000001b3ULL) ^ (target * 0xcbf29ce484222325ULL));
    for (std::uint64_t s = 0; s < pool_cap_; ++s) {
      std::vector<Term> chosen;
      chosen.reserve(source);
      for (std::size_t i = 0; i < source; ++i) chosen.push_back(universe_.sample(target, height_, rng));
      out.emplace_back(source, target, std::move(chosen));
    }
  }
  return pools_.emplace(key, std::make_pair(std::move(out), complete)).first->second.first;
}

bool SubstitutionPool::complete(std::size_t source, std::size_t target) {
  get(source, target);
  return pools_.at({source, target}).second;
}

std::vector<Renaming> all_renamings(std::size_t source, std::size_t target) {
  std::vector<Renaming> out;
  if (source > 0 && target == 0) return out;
  std::vector<std::size_t> digit(source, 0);
  for (;;) {
    out.emplace_back(source, target, digit);
    std::size_t j = source;
    while (j > 0 && ++digit[j - 1] == target) digit[--j] = 0;
    if (j == 0) break;
  }
  return out;
}

bool for_each_tuple(std::span<const std::size_t> sizes, std::uint64_t budget, SplitMix64& rng,
                    const std::function<void(std::span<const std::size_t>)>& visit) {
  std::uint64_t total = 1;
  for (std::size_t s : sizes) {
    if (s == 0) return true;
    total = (total > budget) ? total : total * s;
  }
  std::vector<std::size_t> digit(sizes.size(), 0);
  if (total <= budget) {
    for (;;) {
      visit(digit);
      std::size_t j = sizes.size();
      while (j > 0 && ++digit[j - 1] == sizes[j - 1]) digit[--j] = 0;
      if (j == 0) return true;
    }
  }
  for (std::uint64_t b = 0; b < budget; ++b) {
    for (std::size_t j = 0; j < sizes.size(); ++j) digit[j] = rng.below(sizes[j]);
    visit(digit);
  }
  return false;
}

namespace {

std::string nat(std::size_t n) { return std::to_string(n); }

class MonoidSuite {
 public:
  MonoidSuite(const Signature& sig, const LawBounds& bounds, const SubstEngineOptions& options)
      : sig_(sig),
        bounds_(bounds),
        options_(options),
        universe_(sig, bounds.cap),
        pool_(universe_, bounds.subst_height, bounds.pool_cap, bounds.seed ^ 0x5eed),
        rng_(bounds.seed),
        report_("monoid-laws", sig.name()) {
    bounds.describe(report_);
    report_.set_parameter("engine", to_string(options.engine));
  }

  LawReport run() {
    functor_laws();
    unit_laws();
    associativity();
    naturality();
    module_laws();
    strength_laws();
    engine_equivalence();
    return std::move(report_);
  }

 private:
  Term sub(const Term& t, const Substitution& c) const {
    return substitute(options_.engine, t, c, options_.faults);
  }

  // Exhaustive universe or `samples` uniform draws.
  std::vector<Term> terms(std::size_t n, std::size_t h, LawResult& law) {
    if (bounds_.exhaustive) return universe_.terms(n, h);
    law.mark_sampled();
    std::vector<Term> out;
    if (universe_.count(n, h) == 0) return out;
    for (std::uint64_t s = 0; s < bounds_.samples; ++s) out.push_back(universe_.sample(n, h, rng_));
    return out;
  }

  const std::vector<Substitution>& pool(std::size_t source, std::size_t target, LawResult& law) {
    if (!pool_.complete(source, target)) law.mark_sampled();
    return pool_.get(source, target);
  }

  void tuples(LawResult& law, std::size_t term_count, std::vector<std::size_t> sizes,
              const std::function<void(std::span<const std::size_t>)>& visit) {
    std::uint64_t budget = bounds_.per_term_budget;
    if (term_count > 0) budget = std::min<std::uint64_t>(budget, bounds_.case_budget / term_count);
    budget = std::max<std::uint64_t>(budget, 1);
    if (!for_each_tuple(sizes, budget, rng_, visit)) law.mark_sampled();
  }

  std::size_t N() const { return bounds_.max_context; }

  void functor_laws() {
    LawResult& id = report_.law("functor-identity");
    LawResult& comp = report_.law("functor-composition");
    for (std::size_t n = 0; n <= N(); ++n) {
      for (const auto& t : terms(n, bounds_.max_height, id)) {
        id.check([&]() -> std::optional<Counterexample> {
          Term r = rename(t, Renaming::identity(n));
          if (r == t) return std::nullopt;
          return Counterexample{{{"t", print_term(t)}, {"context", nat(n)}}, print_term(r), print_term(t)};
        });
      }
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        for (std::size_t n2 = 0; n2 <= N(); ++n2) {
          auto fs = all_renamings(n, n1);
          auto gs = all_renamings(n1, n2);
          const auto ts = terms(n, bounds_.max_height, comp);
          for (const auto& t : ts) {
            tuples(comp, ts.size(), {fs.size(), gs.size()}, [&](std::span<const std::size_t> ix) {
              const Renaming& f = fs[ix[0]];
              const Renaming& g = gs[ix[1]];
              comp.check([&]() -> std::optional<Counterexample> {
                Term lhs = rename(rename(t, f), g);
                Term rhs = rename(t, f.then(g));
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                       {"f", print_renaming(f)}, {"g", print_renaming(g)}},
                                      print_term(lhs), print_term(rhs)};
              });
            });
          }
        }
      }
    }
  }

  void unit_laws() {
    LawResult& right = report_.law("right-unit");
    LawResult& left = report_.law("left-unit");
    for (std::size_t n = 0; n <= N(); ++n) {
      Substitution eta = Substitution::identity(n);
      for (const auto& t : terms(n, bounds_.max_height, right)) {
        right.check([&]() -> std::optional<Counterexample> {
          Term r = sub(t, eta);
          if (r == t) return std::nullopt;
          return Counterexample{{{"t", print_term(t)}, {"context", nat(n)}}, print_term(r), print_term(t)};
        });
      }
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        for (const auto& c : pool(n, n1, left)) {
          for (std::size_t i = 0; i < n; ++i) {
            left.check([&]() -> std::optional<Counterexample> {
              Term r = sub(Term::var(i, n), c);
              if (r == c[i]) return std::nullopt;
              return Counterexample{{{"t", "x" + nat(i)}, {"context", nat(n)},
                                     {"c", print_substitution(c)}, {"c.target", nat(n1)}},
                                    print_term(r), print_term(c[i])};
            });
          }
        }
      }
    }
  }

  void associativity() {
    LawResult& law = report_.law("associativity");
    for (std::size_t n = 0; n <= N(); ++n) {
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        for (std::size_t n2 = 0; n2 <= N(); ++n2) {
          const auto& cs = pool(n, n1, law);
          const auto& ds = pool(n1, n2, law);
          const auto ts = terms(n, bounds_.max_height, law);
          for (const auto& t : ts) {
            tuples(law, ts.size(), {cs.size(), ds.size()}, [&](std::span<const std::size_t> ix) {
              const Substitution& c = cs[ix[0]];
              const Substitution& d = ds[ix[1]];
              law.check([&]() -> std::optional<Counterexample> {
                Term lhs = sub(sub(t, c), d);
                Term rhs = sub(t, compose(c, d, options_.engine, options_.faults));
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                       {"c", print_substitution(c)}, {"c.target", nat(n1)},
                                       {"d", print_substitution(d)}, {"d.target", nat(n2)}},
                                      print_term(lhs), print_term(rhs)};
              });
            });
          }
        }
      }
    }
  }

  void naturality() {
    LawResult& rs = report_.law("naturality-rename-then-subst");
    LawResult& sr = report_.law("naturality-subst-then-rename");
    for (std::size_t n = 0; n <= N(); ++n) {
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        for (std::size_t n2 = 0; n2 <= N(); ++n2) {
          auto rhos = all_renamings(n, n1);
          const auto& cs = pool(n1, n2, rs);
          const auto ts = terms(n, bounds_.max_height, rs);
          for (const auto& t : ts) {
            tuples(rs, ts.size(), {rhos.size(), cs.size()}, [&](std::span<const std::size_t> ix) {
              const Renaming& rho = rhos[ix[0]];
              const Substitution& c = cs[ix[1]];
              rs.check([&]() -> std::optional<Counterexample> {
                Term lhs = sub(rename(t, rho), c);
                std::vector<Term> images;
                for (std::size_t i = 0; i < n; ++i) images.push_back(c[rho(i)]);
                Term rhs = sub(t, Substitution(n, n2, std::move(images)));
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                       {"rho", print_renaming(rho)}, {"c", print_substitution(c)},
                                       {"c.target", nat(n2)}},
                                      print_term(lhs), print_term(rhs)};
              });
            });
          }
          const auto& cs2 = pool(n, n1, sr);
          auto rhos2 = all_renamings(n1, n2);
          const auto ts2 = terms(n, bounds_.max_height, sr);
          for (const auto& t : ts2) {
            tuples(sr, ts2.size(), {cs2.size(), rhos2.size()}, [&](std::span<const std::size_t> ix) {
              const Substitution& c = cs2[ix[0]];
              const Renaming& rho = rhos2[ix[1]];
              sr.check([&]() -> std::optional<Counterexample> {
                Term lhs = rename(sub(t, c), rho);
                std::vector<Term> images;
                for (std::size_t i = 0; i < n; ++i) images.push_back(rename(c[i], rho));
                Term rhs = sub(t, Substitution(n, n2, std::move(images)));
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                       {"c", print_substitution(c)}, {"c.target", nat(n1)},
                                       {"rho", print_renaming(rho)}},
                                      print_term(lhs), print_term(rhs)};
              });
            });
          }
        }
      }
    }
  }

  // Substitution under m binders of the composite equals substituting with
  // each weakened factor in turn.
  void module_laws() {
    for (std::size_t m : sig_.binder_counts()) {
      if (m == 0) continue;
      LawResult& law = report_.law("module-binders-" + nat(m));
      std::size_t h = bounds_.max_height > 1 ? bounds_.max_height - 1 : 1;
      for (std::size_t n = 0; n <= N(); ++n) {
        for (std::size_t n1 = 0; n1 <= N(); ++n1) {
          for (std::size_t n2 = 0; n2 <= N(); ++n2) {
            const auto& cs = pool(n, n1, law);
            const auto& ds = pool(n1, n2, law);
            const auto ts = terms(n + m, h, law);
            for (const auto& t : ts) {
              tuples(law, ts.size(), {cs.size(), ds.size()}, [&](std::span<const std::size_t> ix) {
                const Substitution& c = cs[ix[0]];
                const Substitution& d = ds[ix[1]];
                law.check([&]() -> std::optional<Counterexample> {
                  const Faults& f = options_.faults;
                  Term lhs = sub(t, weaken_subst(compose(c, d, options_.engine, f), m, f));
                  Term rhs = sub(sub(t, weaken_subst(c, m, f)), weaken_subst(d, m, f));
                  if (lhs == rhs) return std::nullopt;
                  return Counterexample{{{"t", print_term(t)}, {"context", nat(n + m)},
                                         {"c", print_substitution(c)}, {"c.target", nat(n1)},
                                         {"d", print_substitution(d)}, {"d.target", nat(n2)},
                                         {"binders", nat(m)}},
                                        print_term(lhs), print_term(rhs)};
                });
              });
            }
          }
        }
      }
    }
  }

  void strength_laws() {
    LawResult& unit = report_.law("strength-unit");
    LawResult& assoc = report_.law("strength-associativity");
    std::vector<std::size_t> ms = sig_.binder_counts();
    ms.erase(std::remove(ms.begin(), ms.end(), 0), ms.end());
    for (std::size_t m : {1, 2}) {
      if (std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(m);
    }
    const Faults& f = options_.faults;
    for (std::size_t n = 0; n <= N(); ++n) {
      for (std::size_t m : ms) {
        unit.check([&]() -> std::optional<Counterexample> {
          Substitution lhs = weaken_subst(Substitution::identity(n), m, f);
          Substitution rhs = Substitution::identity(n + m);
          if (lhs == rhs) return std::nullopt;
          return Counterexample{{{"context", nat(n)}, {"binders", nat(m)}},
                                print_substitution(lhs), print_substitution(rhs)};
        });
      }
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        for (const auto& c : pool(n, n1, assoc)) {
          for (std::size_t m1 : ms) {
            for (std::size_t m2 : ms) {
              assoc.check([&]() -> std::optional<Counterexample> {
                Substitution lhs = weaken_subst(weaken_subst(c, m1, f), m2, f);
                Substitution rhs = weaken_subst(c, m1 + m2, f);
                if (lhs == rhs) return std::nullopt;
                return Counterexample{{{"c", print_substitution(c)}, {"c.target", nat(n1)},
                                       {"m1", nat(m1)}, {"m2", nat(m2)}},
                                      print_substitution(lhs), print_substitution(rhs)};
              });
            }
          }
        }
      }
    }
  }

  void engine_equivalence() {
    LawResult& law = report_.law("engine-equivalence");
    LawResult& scope = report_.law("scope-invariant");
    const Faults& f = options_.faults;
    for (std::size_t n = 0; n <= N(); ++n) {
      for (std::size_t n1 = 0; n1 <= N(); ++n1) {
        const auto& cs = pool(n, n1, law);
        if (!pool_.complete(n, n1)) scope.mark_sampled();
        const auto ts = terms(n, bounds_.max_height, law);
        for (const auto& t : ts) {
          tuples(law, ts.size(), {cs.size()}, [&](std::span<const std::size_t> ix) {
            const Substitution& c = cs[ix[0]];
            Term a = subst_oracle(t, c, f);
            law.check([&]() -> std::optional<Counterexample> {
              Term b = subst_hss(t, c, f);
              if (a == b) return std::nullopt;
              return Counterexample{{{"t", print_term(t)}, {"context", nat(n)},
                                     {"c", print_substitution(c)}, {"c.target", nat(n1)}},
                                    print_term(b), print_term(a)};
            });
            scope.check([&]() -> std::optional<Counterexample> {
              if (a.context() == n1 && is_well_scoped(sig_, a)) return std::nullopt;
              return Counterexample{{{"t", print_term(t)}, {"c", print_substitution(c)}},
                                    print_term(a), "a term scoped over " + nat(n1)};
            });
          });
        }
      }
    }
  }

  const Signature& sig_;
  LawBounds bounds_;
  SubstEngineOptions options_;
  TermUniverse universe_;
  SubstitutionPool pool_;
  SplitMix64 rng_;
  LawReport report_;
};

}  // namespace

LawReport run_monoid_law_suite(const Signature& sig, const LawBounds& bounds,
                               const SubstEngineOptions& options) {
  return MonoidSuite(sig, bounds, options).run();
}

}  // namespace initsem
