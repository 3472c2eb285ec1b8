#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "initsem/enumerate.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"
#include "initsem/term.hpp"

namespace initsem {

/// One element of I + Sigma(X): a variable, or a constructor with arguments.
struct Layer {
  std::optional<std::size_t> variable;
  std::string constructor;
  std::vector<Term> args;
};

/// [var, con]: I + Sigma(T) -> T.
Term roll(const Signature& sig, const Layer& layer, std::size_t context);
/// Inverse of roll: the top layer of a term.
Layer unroll(const Term& t);

struct LambekOptions {
  std::uint64_t cap = kDefaultCountCap;
  /// Random round trips when T_{k+1}(n) exceeds the cap.
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
};

/// Checks that roll : I + Sigma(T_k)(n) -> T_{k+1}(n) is a bijection. When
/// T_{k+1}(n) fits under the cap every input is streamed in order and
/// compared with the materialized enumeration. Otherwise the check is
/// factorized: every element of every argument list is rolled with the other
/// arguments fixed and must be recovered and ranked inside its constructor's
/// block, which together with the exact cardinalities gives bijectivity; full
/// rank/unrank round trips are sampled on top. Also checks that folding into
/// the fixpoint of the initial model and collapsing gives back the term.
LawReport check_lambek(const Signature& sig, std::size_t context, std::size_t height,
                       const LambekOptions& options = {});

}  // namespace initsem
