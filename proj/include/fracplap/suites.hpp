#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fracplap {

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckLine> checks;
  double seconds = 0.0;

  bool pass() const;
};

/// Number of acceptance criteria (ids 1 .. count).
int criterion_count();
std::string criterion_title(int id);

/// Runs one acceptance criterion. Unexpected exceptions become failed
/// checks, never escape.
CriterionResult run_criterion(int id);

/// Names accepted by `verify`.
std::vector<std::string> suite_names();

/// Criterion ids grouped under a suite name; throws std::invalid_argument
/// for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);

/// One "[PASS]"/"[FAIL]" line per check plus a summary line.
std::string format_result(const CriterionResult& result);

}  // namespace fracplap
