#pragma once

// Self-checks run by `ccsim verify <suite>`: exact claims compared against
// enumeration, quadrature or closed forms, each with a pinned bound.

#include <string>
#include <string_view>
#include <vector>

namespace ccsim {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string basis;  // how the reference value was obtained
  bool passed = false;
};

// Suites: "classical", "quantum", "search", "all". Throws ArgumentError on
// an unknown suite.
std::vector<CheckResult> run_verification(std::string_view suite);

// One line per check: PASS/FAIL suite/name measured=.. bound=.. basis=..
std::string render_checks(const std::vector<CheckResult>& checks);

// Integral over r in (0,1) of the conditional agreement of the one-bit EPR
// simulation, by adaptive Gauss-Kronrod on the pieces between breakpoints.
double epr_one_bit_agreement(double x, double y);

}  // namespace ccsim
