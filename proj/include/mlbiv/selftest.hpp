#pragma once

#include <string>
#include <vector>

namespace mlbiv {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;  // one line: worst deviation or first failure
  double seconds = 0;
};

/// gamma, anchors, reductions, collapse, invariance, cross, edge, decay, poles.
const std::vector<std::string>& selftest_suites();

/// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name);

}  // namespace mlbiv
