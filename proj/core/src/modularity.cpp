#include "initsem/modularity.hpp"

#include <algorithm>

#include "initsem/model.hpp"

namespace initsem {

LawReport pushout_models(const Signature& base, const SignatureMorphism& left,
                         const SignatureMorphism& right, const LawBounds& bounds) {
  SignaturePushout p = pushout_signatures(base, left, right);
  LawReport report("pushout-models", base.name());
  bounds.describe(report);
  report.set_parameter("left", left.target.name());
  report.set_parameter("right", right.target.name());
  report.set_parameter("apex", p.apex.name());
  report.set_stat("apex_constructors", p.apex.size());
  report.set_parameter("leg_max_height", std::to_string(std::min<std::size_t>(bounds.max_height, 2)));

  ModelPtr apex = initial_model(p.apex);
  ModelPtr base_to_left = pullback_model(left, initial_model(left.target));
  ModelPtr base_to_right = pullback_model(right, initial_model(right.target));
  ModelPtr left_to_apex = pullback_model(p.left, apex);
  ModelPtr right_to_apex = pullback_model(p.right, apex);
  ModelPtr diagonal = pullback_model(compose(left, p.left), apex);

  TermUniverse universe(base, bounds.cap);
  LawResult& square = report.law("square-commutes");
  LawResult& diag = report.law("diagonal");
  for (std::size_t n = 0; n <= bounds.max_context; ++n) {
    for (const auto& t : universe.terms(n, bounds.max_height)) {
      Value via_left = fold(*left_to_apex, fold(*base_to_left, t).term());
      Value via_right = fold(*right_to_apex, fold(*base_to_right, t).term());
      square.check([&]() -> std::optional<Counterexample> {
        if (via_left == via_right) return std::nullopt;
        return Counterexample{{{"t", print_term(t)}, {"context", std::to_string(n)}},
                              to_string(via_left), to_string(via_right)};
      });
      diag.check([&]() -> std::optional<Counterexample> {
        Value d = fold(*diagonal, t);
        if (d == via_left) return std::nullopt;
        return Counterexample{{{"t", print_term(t)}, {"context", std::to_string(n)}}, to_string(d),
                              to_string(via_left)};
      });
    }
  }

  report.absorb(check_model_morphism(*base_to_left, bounds), "base-to-left.");
  report.absorb(check_model_morphism(*base_to_right, bounds), "base-to-right.");
  LawBounds legs = bounds;
  legs.max_height = std::min<std::size_t>(bounds.max_height, 2);
  report.absorb(check_model_morphism(*left_to_apex, legs), "left-to-apex.");
  report.absorb(check_model_morphism(*right_to_apex, legs), "right-to-apex.");
  return report;
}

}  // namespace initsem
