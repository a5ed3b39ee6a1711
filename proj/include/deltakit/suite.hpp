#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deltakit/json_io.hpp"

namespace deltakit::suite {

/// One acceptance property run. `detail` carries counts only, so the JSON
/// form is reproducible; `seconds` is reported separately.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  Nat checked = 0;
  Nat failures = 0;
  Json detail;
  double seconds = 0;
  double limitSeconds = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  Nat workers = 1;
};

/// Criteria 1..9. Criterion 10 (determinism) is checked by running the suite twice.
std::vector<int> criterionIds();
std::string criterionName(int id);
double criterionLimit(int id);

CriterionResult runCriterion(int id, const SuiteOptions& opts);
std::vector<CriterionResult> runSuite(const SuiteOptions& opts, const std::vector<int>& ids);

Json encode(const CriterionResult& r);
Json encodeSuite(const SuiteOptions& opts, const std::vector<CriterionResult>& results);

}  // namespace deltakit::suite
