#include "qfs/report.hpp"

#include <sstream>

#include "qfs/errors.hpp"
#include "qfs/version.hpp"

namespace qfs {

bool Report::all_passed() const {
  for (const auto& c : checks) {
    if (c.status == "fail" || c.status == "error") return false;
  }
  return true;
}

bool Report::any_budget_skipped() const {
  for (const auto& c : checks) {
    if (c.status == "skipped-budget") return true;
  }
  return false;
}

int Report::exit_code() const {
  if (!all_passed()) return 1;
  if (any_budget_skipped()) return 3;
  return 0;
}

Json Report::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["scenario"] = scenario;
  j["config"] = config;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json jc;
    jc["name"] = c.name;
    jc["kind"] = c.kind;
    jc["status"] = c.status;
    jc["wall_ms"] = c.wall_ms;
    jc["detail"] = c.detail;
    arr.push_back(std::move(jc));
  }
  j["checks"] = std::move(arr);
  return j;
}

std::string Report::to_tsv() const {
  std::ostringstream out;
  out << "name\tkind\tstatus\twall_ms\tdetail\n";
  for (const auto& c : checks) {
    out << c.name << '\t' << c.kind << '\t' << c.status << '\t' << c.wall_ms << '\t'
        << c.detail.dump() << '\n';
  }
  return out.str();
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "scenario: " << scenario << "  (" << kToolVersion << ")\n";
  size_t passed = 0;
  for (const auto& c : checks) {
    out << "  [" << c.status << "] " << c.name << " (" << c.kind << ", " << c.wall_ms << " ms)\n";
    out << "      " << c.detail.dump() << "\n";
    if (c.status == "pass") ++passed;
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  return out.str();
}

std::string Report::render(const std::string& format) const {
  if (format == "json") return to_json().dump(2) + "\n";
  if (format == "tsv") return to_tsv();
  if (format == "text") return to_text();
  throw Error(Errc::BadArgument, "unknown format '" + format + "'");
}

}  // namespace qfs
