#pragma once

#include <string>
#include <vector>

namespace meshtd {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Known suites: delta, derivative, pml, free-space, 3d-2d, oracle.
/// "all" (or empty) runs every suite.
std::vector<CheckResult> run_validation(const std::string &suite);

std::vector<std::string> validation_suites();

}  // namespace meshtd
