#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace initsem {

/// Deliberate defects used to show that the law suites detect real bugs.
/// Never enabled outside tests and the CLI's `--fault-inject`.
struct Faults {
  /// When a substitution crosses binders, the fresh variables it introduces
  /// are sent one level too low, onto the previous variable (the first free
  /// one when there are any).
  bool weaken_off_by_one = false;
  /// A model's constructor interpretation replaces a first argument that is a
  /// variable by the variable at level 0.
  bool model_op_ignore_arg = false;
  /// The adjunction's K map feeds the first generator argument to every hole.
  bool adjunction_collapse_args = false;
  /// Interpretation templates are accepted even when a hole sits at the wrong
  /// binder depth.
  bool template_depth = false;

  bool any() const {
    return weaken_off_by_one || model_op_ignore_arg || adjunction_collapse_args || template_depth;
  }
};

/// Names accepted by `enable_fault`, in documentation order.
const std::vector<std::string>& fault_names();

/// Throws Error(Usage) for an unknown name.
void enable_fault(Faults& faults, std::string_view name);

}  // namespace initsem
