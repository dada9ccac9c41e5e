#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace actkrr {

struct CheckResult {
  std::string name;
  bool pass = false;
  double ms = 0.0;
  std::string detail;
};

// The ten acceptance criteria, in order. Each runs self-contained with fixed
// seeds and pinned tolerances and enforces its own runtime budget.
std::vector<CheckResult> run_acceptance(std::ostream* log, int jobs = 0);

// Criterion-1 predicate, split out so a deliberately wrong constant can be
// shown to fail.
bool check_distortion_constant(double value);

// Prints one line per criterion with timing; returns a process exit code.
int run_validate(std::ostream& out, int jobs = 0);

}  // namespace actkrr
