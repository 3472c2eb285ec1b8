#include "initsem/report.hpp"

#include <sstream>

namespace initsem {

void LawResult::check(const std::function<std::optional<Counterexample>()>& check) {
  ++cases;
  std::optional<Counterexample> failure;
  try {
    failure = check();
  } catch (const std::exception& e) {
    failure = Counterexample{{}, std::string("error: ") + e.what(), "no error"};
  }
  if (!failure) return;
  ++failure_count;
  if (failures.size() < kMaxRecorded) failures.push_back(std::move(*failure));
}

LawResult& LawReport::law(const std::string& name) {
  auto [it, fresh] = laws_.try_emplace(name);
  if (fresh) it->second.name = name;
  return it->second;
}

void LawReport::absorb(const LawReport& other, const std::string& prefix) {
  for (const auto& [name, result] : other.laws_) {
    LawResult copy = result;
    copy.name = prefix + name;
    laws_[copy.name] = std::move(copy);
  }
  for (const auto& [name, value] : other.stats_) stats_[prefix + name] = value;
}

bool LawReport::passed() const { return failure_count() == 0; }

std::uint64_t LawReport::failure_count() const {
  std::uint64_t total = 0;
  for (const auto& [name, law] : laws_) total += law.failure_count;
  return total;
}

std::uint64_t LawReport::case_count() const {
  std::uint64_t total = 0;
  for (const auto& [name, law] : laws_) total += law.cases;
  return total;
}

nlohmann::ordered_json to_json(const LawReport& report) {
  nlohmann::ordered_json out;
  out["schema"] = kReportSchema;
  out["report"] = report.kind();
  out["signature"] = report.subject();
  out["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.parameters()) out["parameters"][k] = v;
  out["passed"] = report.passed();
  out["cases"] = report.case_count();
  out["failure_count"] = report.failure_count();
  out["laws"] = nlohmann::ordered_json::array();
  for (const auto& [name, law] : report.laws()) {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["cases"] = law.cases;
    j["coverage"] = law.coverage;
    j["failure_count"] = law.failure_count;
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : law.failures) {
      nlohmann::ordered_json fj;
      fj["inputs"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : f.inputs) fj["inputs"][k] = v;
      fj["lhs"] = f.lhs;
      fj["rhs"] = f.rhs;
      j["failures"].push_back(std::move(fj));
    }
    out["laws"].push_back(std::move(j));
  }
  out["stats"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.stats()) out["stats"][k] = v;
  return out;
}

std::string render_text(const LawReport& report) {
  std::ostringstream out;
  out << report.kind() << " report for " << report.subject() << "\n";
  for (const auto& [k, v] : report.parameters()) out << "  " << k << " = " << v << "\n";
  for (const auto& [name, law] : report.laws()) {
    out << (law.passed() ? "  PASS " : "  FAIL ") << name << "  cases=" << law.cases << " ("
        << law.coverage << ")";
    if (!law.passed()) out << " failures=" << law.failure_count;
    out << "\n";
    for (const auto& f : law.failures) {
      out << "    counterexample:";
      for (const auto& [k, v] : f.inputs) out << " " << k << "=" << v;
      out << "\n      lhs: " << f.lhs << "\n      rhs: " << f.rhs << "\n";
    }
  }
  for (const auto& [k, v] : report.stats()) out << "  stat " << k << " = " << v << "\n";
  out << (report.passed() ? "result: pass" : "result: FAIL") << " (" << report.case_count()
      << " cases, " << report.failure_count() << " failures)\n";
  return out.str();
}

}  // namespace initsem
