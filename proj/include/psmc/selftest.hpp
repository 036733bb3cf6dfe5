#pragma once

#include <iosfwd>

namespace psmc {

/// Quick invariant checks (a few seconds).  Prints one PASS/FAIL line per
/// check and returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace psmc
