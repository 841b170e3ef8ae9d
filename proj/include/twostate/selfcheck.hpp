#pragma once

// Fast oracle and invariant checks bundled with the library, used by the
// `check` subcommand to validate a build in place.

#include <string>
#include <vector>

namespace twostate {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckOutcome> run_self_checks();

}  // namespace twostate
