#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace initsem {

inline constexpr const char* kReportSchema = "initsem/1";

/// A failing case, printed in the term grammar so it can be replayed.
struct Counterexample {
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string lhs;
  std::string rhs;
};

struct LawResult {
  static constexpr std::size_t kMaxRecorded = 5;

  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failure_count = 0;
  /// "exhaustive" when every case in the stated universe was visited,
  /// "sampled" otherwise.
  std::string coverage = "exhaustive";
  std::vector<Counterexample> failures;

  bool passed() const { return failure_count == 0; }
  void mark_sampled() { coverage = "sampled"; }

  /// Counts one case. `check` returns nullopt on success or the
  /// counterexample; an exception thrown by `check` is a failure too.
  void check(const std::function<std::optional<Counterexample>()>& check);
};

class LawReport {
 public:
  LawReport() = default;
  LawReport(std::string kind, std::string subject)
      : kind_(std::move(kind)), subject_(std::move(subject)) {}

  const std::string& kind() const { return kind_; }
  const std::string& subject() const { return subject_; }

  /// Get-or-create; results are kept sorted by name.
  LawResult& law(const std::string& name);
  const std::map<std::string, LawResult>& laws() const { return laws_; }

  void set_stat(const std::string& name, std::uint64_t value) { stats_[name] = value; }
  const std::map<std::string, std::uint64_t>& stats() const { return stats_; }
  void set_parameter(const std::string& name, std::string value) {
    parameters_[name] = std::move(value);
  }
  const std::map<std::string, std::string>& parameters() const { return parameters_; }

  /// Copies `other`'s laws and stats in, prefixing names with `prefix`.
  void absorb(const LawReport& other, const std::string& prefix);

  bool passed() const;
  std::uint64_t failure_count() const;
  std::uint64_t case_count() const;

 private:
  std::string kind_;
  std::string subject_;
  std::map<std::string, LawResult> laws_;
  std::map<std::string, std::uint64_t> stats_;
  std::map<std::string, std::string> parameters_;
};

/// `{schema, report, signature, parameters, passed, laws:[{name, cases,
/// coverage, failure_count, failures:[{inputs, lhs, rhs}]}], stats}`.
nlohmann::ordered_json to_json(const LawReport& report);
std::string render_text(const LawReport& report);

}  // namespace initsem
