#pragma once

#include "initsem/laws.hpp"
#include "initsem/report.hpp"
#include "initsem/signature.hpp"

namespace initsem {

/// Builds the pushout of the span left.target <- base -> right.target and
/// the four folds between the initial models (each along the pullback model
/// of a signature morphism). Checks on base terms within bounds that the
/// square of folds commutes and agrees with the fold along the diagonal, and
/// that each fold is a model morphism.
LawReport pushout_models(const Signature& base, const SignatureMorphism& left,
                         const SignatureMorphism& right, const LawBounds& bounds);

}  // namespace initsem
