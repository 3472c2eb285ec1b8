#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "initsem/signature.hpp"

namespace initsem::builtin {

// Same content as fixtures/*.sig.
const Signature& lambda_calculus();  // LC: app [0,0], abs [1]
const Signature& first_order_logic();  // FOL: 8 constructors
const Signature& linear_logic();  // LL: 11 constructors
const Signature& empty();  // E
const Signature& unary();  // U: u [0]
const Signature& pair();  // PAIR: pair [0,0]

/// Looks a built-in up by its signature name (LC, FOL, LL, E, U, PAIR).
std::optional<Signature> find(std::string_view name);

/// LC, FOL and LL: the fixtures exercised by the law suites.
std::vector<Signature> law_fixtures();

}  // namespace initsem::builtin
