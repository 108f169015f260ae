#pragma once

#include <string>
#include <vector>

#include "xxz/app/config.hpp"

namespace xxz::app {

enum class Status { Pass, Fail, Skipped };

std::string status_name(Status s);

struct CriterionResult {
  int id = 0;
  Status status = Status::Fail;
  // Headline figure compared against tolerance; the detail names it.
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

inline constexpr int kCriteria = 10;

// Criteria 1..10; criterion 11 compares two reports and lives with the caller.
CriterionResult run_criterion(int id, const RunConfig& cfg);
std::vector<CriterionResult> run_check(const RunConfig& cfg);

// CSV with no timings, so identical configurations give identical bytes.
std::string format_report(const std::vector<CriterionResult>& results);
// 1 on any failure, else 3 on any skip, else 0.
int exit_code(const std::vector<CriterionResult>& results);

}  // namespace xxz::app
