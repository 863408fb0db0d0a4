#pragma once

#include <string>
#include <vector>

namespace ebound {

/// One invariant check: `measured` is the quantity the check gates on
/// (residual, deviation, count), `detail` a short human-readable account.
struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0;
  std::string detail;
};

std::vector<CheckResult> verify_special();
std::vector<CheckResult> verify_typical();
std::vector<CheckResult> verify_lp();
std::vector<CheckResult> verify_bounds();
std::vector<CheckResult> verify_all();

}  // namespace ebound
