#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "initsem/enumerate.hpp"
#include "initsem/faults.hpp"

namespace initsem::cli {

enum ExitCode : int { kOk = 0, kLawFailure = 1, kUsage = 2, kResource = 3 };

enum class Format { Text, Json };

/// Global flags shared by every subcommand.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t max_context = 2;
  std::size_t max_height = 3;
  std::size_t subst_height = 2;
  /// Unset means the subcommand's default.
  std::uint64_t samples = 0;
  bool samples_given = false;
  bool exhaustive = false;
  std::uint64_t cap = kDefaultCountCap;
  Format format = Format::Text;
  bool allow_uncertified = false;
  Faults faults;
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace initsem::cli
