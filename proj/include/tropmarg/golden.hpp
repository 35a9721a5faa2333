#pragma once

#include <string>
#include <vector>

namespace tropmarg {

/// One comparison against reference data. `group` ties it to an acceptance
/// criterion number.
struct GoldenCheck {
  int group = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Worked-example suite shared by the CLI selftest, the acceptance binary
/// and the Python module. Never throws; an exception fails its check.
std::vector<GoldenCheck> run_golden_checks();

}  // namespace tropmarg
