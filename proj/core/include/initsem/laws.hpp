#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "initsem/enumerate.hpp"
#include "initsem/faults.hpp"
#include "initsem/report.hpp"
#include "initsem/rng.hpp"
#include "initsem/subst.hpp"

namespace initsem {

/// Bounds shared by every law suite.
struct LawBounds {
  std::size_t max_context = 2;
  std::size_t max_height = 3;
  /// Height of the images in pooled substitutions.
  std::size_t subst_height = 2;
  /// Random cases per law when not exhaustive; extra random cases otherwise.
  std::uint64_t samples = 0;
  /// Visit every term of the (context, height) universe.
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultCountCap;
  /// Substitutions per (source, target) pair before the pool is sampled.
  std::uint64_t pool_cap = 256;
  /// Combinations of pooled inputs per term before they are sampled.
  std::uint64_t per_term_budget = 400;
  /// Cases per law and context tuple; shrinks the per-term budget on large
  /// universes, never below one combination per term.
  std::uint64_t case_budget = 40000;

  void describe(LawReport& report) const;
};

/// Substitutions source -> target whose images have height <= h: all of them
/// when there are at most `pool_cap`, else a seeded sample of that size.
class SubstitutionPool {
 public:
  SubstitutionPool(TermUniverse& universe, std::size_t height, std::uint64_t pool_cap,
                   std::uint64_t seed);

  const std::vector<Substitution>& get(std::size_t source, std::size_t target);
  bool complete(std::size_t source, std::size_t target);

 private:
  TermUniverse& universe_;
  std::size_t height_;
  std::uint64_t pool_cap_;
  std::uint64_t seed_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::vector<Substitution>, bool>> pools_;
};

/// Every renaming source -> target.
std::vector<Renaming> all_renamings(std::size_t source, std::size_t target);

/// Calls `visit(indices)` for every tuple in the product of `sizes` when the
/// product is within `budget`, else for `budget` seeded random tuples.
/// Returns whether the product was visited completely.
bool for_each_tuple(std::span<const std::size_t> sizes, std::uint64_t budget, SplitMix64& rng,
                    const std::function<void(std::span<const std::size_t>)>& visit);

struct SubstEngineOptions {
  Engine engine = Engine::Hss;
  Faults faults;
};

/// Functor, monoid (unit and associativity), naturality, module and strength
/// laws, plus equivalence of the two substitution engines.
LawReport run_monoid_law_suite(const Signature& sig, const LawBounds& bounds,
                               const SubstEngineOptions& options = {});

}  // namespace initsem
