#pragma once

#include <string>
#include <vector>

#include "vneq/types.hpp"

namespace vneq::verify {

struct Check {
  std::string name;
  double value = 0.0;      // measured residual/metric
  double tolerance = 0.0;  // bound it must stay under
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool pass = true;

  void add(const std::string& name, double value, double tolerance);
};

/// Fault hooks for negative-control testing of the reporting path.
struct FaultInjection {
  bool corrupt_projector = false;
};

SuiteReport run_theorem1(const FaultInjection& fault = {});
SuiteReport run_theorem2();
SuiteReport run_examples();
SuiteReport run_elliptic();
SuiteReport run_casimir();
std::vector<SuiteReport> run_all();

std::string to_json_string(const std::vector<SuiteReport>& reports);

}  // namespace vneq::verify
