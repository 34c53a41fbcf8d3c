#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qfs {

using Json = nlohmann::ordered_json;

/// One executed check. status is one of pass, fail, error, skipped-budget.
struct CheckResult {
  std::string name;
  std::string kind;
  std::string status;
  double wall_ms = 0;
  Json detail;
};

/// Machine-readable run report. Identical configs and tool version yield
/// byte-identical reports up to the timing fields.
struct Report {
  std::string scenario;
  Json config;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  bool any_budget_skipped() const;
  /// 0 pass, 1 check failure, 3 budget exhaustion.
  int exit_code() const;

  Json to_json() const;  // adds schema_version / tool_version
  std::string to_tsv() const;
  std::string to_text() const;
  std::string render(const std::string& format) const;  // json | tsv | text
};

}  // namespace qfs
