#pragma once

#include <string>

#include "qfs/criteria.hpp"
#include "qfs/report.hpp"
#include "qfs/scenario.hpp"

namespace qfs {

struct RunOptions {
  int threads = 1;
  std::string section;         // empty = all sections
  std::string tier = "default";  // "default" skips tier=slow checks; "full" runs all
  Budget budget;
  std::string format = "json";
};

/// Executes the scenario's checks (after section/tier filtering) and
/// assembles the report in declaration order. Checks are independent and
/// pure, so any thread count yields identical verdicts and payloads.
Report run_scenario(const Scenario& scenario, const RunOptions& options);

/// Executes a single spec (used by the single-shot CLI subcommands).
CheckResult run_check(const CheckSpec& spec, const Budget& budget);

}  // namespace qfs
