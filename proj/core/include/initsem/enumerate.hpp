#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "initsem/rng.hpp"
#include "initsem/signature.hpp"
#include "initsem/term.hpp"

namespace initsem {

inline constexpr std::uint64_t kDefaultCountCap = 1'000'000;

/// The height-bounded stages of the initial chain for one signature:
/// terms(n, k) holds every term over context n of height <= k.
///
/// Counts follow |T_{k+1}(n)| = n + sum_c prod_j |T_k(n + m_{c,j})| and are
/// exact 64-bit integers (overflow raises Error(Resource)). Materialized lists
/// are memoized; the object is not safe for concurrent mutation.
class TermUniverse {
 public:
  explicit TermUniverse(Signature sig, std::uint64_t cap = kDefaultCountCap);

  const Signature& signature() const { return sig_; }
  std::uint64_t cap() const { return cap_; }

  std::uint64_t count(std::size_t context, std::size_t height);

  /// Order: variables ascending, then constructors in declaration order with
  /// argument tuples lexicographic (first argument slowest).
  /// Throws Error(Resource) when the count exceeds the cap.
  const std::vector<Term>& terms(std::size_t context, std::size_t height);

  /// Position of `t` in terms(t.context(), height); consistent with the
  /// enumeration order without materializing it.
  std::uint64_t rank(const Term& t, std::size_t height);
  Term unrank(std::size_t context, std::size_t height, std::uint64_t rank);

  /// Uniform over terms(context, height) via unranking.
  Term sample(std::size_t context, std::size_t height, SplitMix64& rng);

 private:
  Signature sig_;
  std::uint64_t cap_;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> lists_;
};

std::uint64_t count_terms(const Signature& sig, std::size_t context, std::size_t height);
std::vector<Term> enumerate_terms(const Signature& sig, std::size_t context, std::size_t height,
                                  std::uint64_t cap = kDefaultCountCap);

/// Deterministic for a fixed seed, uniform over the height-bounded universe.
/// Throws Error(EmptyUniverse) when no such term exists.
Term random_term(const Signature& sig, std::size_t context, std::size_t max_height,
                 std::uint64_t seed);

/// Checked a*b and a+b for counts.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace initsem
