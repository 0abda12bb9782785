// A suite of known-value checks over published worked examples, exercising
// every library layer end to end. The CLI `selftest` command runs the whole
// suite; failures carry an explanatory detail line.
#pragma once

#include <string>
#include <vector>

namespace msmb {

struct CheckResult {
  std::string group;   // coarse family: "graver", "dim3", "complex", ...
  std::string name;    // unique slug within the suite
  bool pass = false;
  std::string detail;  // expected-vs-got explanation, one line
};

// Runs every check; never throws (errors fail the offending check).
// Deterministic order, grouped by family.
std::vector<CheckResult> verification_suite();

}  // namespace msmb
