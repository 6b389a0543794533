#pragma once

#include <functional>
#include <string>
#include <vector>

namespace revspy {

struct CriterionResult {
  std::string id;    // "c1".."c11", or a suite row name
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

using ProgressFn = std::function<void(const std::string&)>;

// Acceptance criteria 1..11.
CriterionResult run_criterion(int number, const ProgressFn& progress = nullptr);

// Suites: "acceptance" (all criteria), "c1".."c11", "solver-oracle", "table1".
std::vector<std::string> suite_names();
std::vector<CriterionResult> run_suite(const std::string& name, const ProgressFn& progress = nullptr);

}  // namespace revspy
