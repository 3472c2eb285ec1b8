#include "initsem/faults.hpp"

#include "initsem/error.hpp"

namespace initsem {

const std::vector<std::string>& fault_names() {
  static const std::vector<std::string> names = {
      "weaken-off-by-one", "model-op-ignore-arg", "adjunction-collapse-args", "template-depth"};
  return names;
}

void enable_fault(Faults& faults, std::string_view name) {
  if (name == "weaken-off-by-one") {
    faults.weaken_off_by_one = true;
  } else if (name == "model-op-ignore-arg") {
    faults.model_op_ignore_arg = true;
  } else if (name == "adjunction-collapse-args") {
    faults.adjunction_collapse_args = true;
  } else if (name == "template-depth") {
    faults.template_depth = true;
  } else {
    throw Error(ErrorKind::Usage, "unknown fault '" + std::string(name) + "'");
  }
}

}  // namespace initsem
