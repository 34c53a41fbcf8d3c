#pragma once

#include <map>
#include <string>
#include <vector>

namespace qfs {

/// One declarative check: a kind tag plus string parameters mirroring a
/// module operation, with an optional `expect` parameter. Checks without an
/// expectation always pass and just carry their result payload.
struct CheckSpec {
  std::string name;
  std::string kind;
  std::string section;         // filter key for --section
  std::string tier = "default";  // "default" or "slow"
  std::map<std::string, std::string> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
};

struct Scenario {
  std::string name;
  std::vector<CheckSpec> checks;
};

/// Line-based format: `scenario NAME` header, one `check key=value ...` per
/// line (values with spaces double-quoted), `#` comments. Check names must
/// be unique.
Scenario parse_scenario(const std::string& text);

/// The bundled scenario that re-verifies the journal computations end to
/// end. The copy under scenarios/paper.scenario carries the same text.
const char* builtin_paper_scenario();

}  // namespace qfs
