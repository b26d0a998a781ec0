#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cohnet/commands.hpp"

namespace cohnet {

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst value observed
  double threshold = 0.0;  // what the metric was compared against
  std::string detail;
};

// The oracle-equivalence suite: network vs closed form, displacement,
// pure and mixed dual paths, point values, Kerr cat, contraction,
// monotonicity, separability and CSV determinism.
std::vector<CheckResult> run_selftest(const RunConfig& config);

// Prints the pass/fail table; returns 0 iff every check passed.
int cmd_selftest(const RunConfig& config, std::ostream& out);

}  // namespace cohnet
