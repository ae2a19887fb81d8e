#pragma once

#include <string>
#include <vector>

namespace mope {

struct CheckResult {
  std::string id;
  std::string description;
  bool pass = false;
  double margin = 0.0;     // worst measured quantity
  double tolerance = 0.0;  // threshold the margin is held against
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string details;
};

// The full acceptance battery, criteria 1..9, tolerances pinned.
std::vector<CheckResult> run_acceptance();

// Named groups for the command line: identities | conjugation | bch |
// oracle | all. Unknown names throw ConfigError.
std::vector<CheckResult> run_suite(const std::string& name);

std::string checks_to_json(const std::vector<CheckResult>& checks);

}  // namespace mope
