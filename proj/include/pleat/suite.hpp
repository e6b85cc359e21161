#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace pleat {

struct CriterionResult {
  std::string name;
  std::string title;
  bool passed = false;
  // Headline measurement and the bound it is compared against.
  double measured = 0.0;
  double threshold = 0.0;
  std::map<std::string, double> metrics;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteConfig {
  // Overrides for the default tolerances listed by suite_tolerances().
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 20240601;
  std::string filter;  // substring of criterion names; empty runs everything
  unsigned threads = 0;
};

// Default tolerance table, keyed by name.
std::map<std::string, double> suite_tolerances();

std::vector<std::string> suite_criteria();

// Runs every criterion matching the filter. Failures are reported, never thrown.
std::vector<CriterionResult> run_suite(const SuiteConfig& config,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace pleat
