#pragma once

#include <iosfwd>

namespace padsol {

/// Re-derives a set of small worked examples by independent brute-force
/// routes and compares them with the library. Prints one line per check;
/// returns true when every check passed.
bool run_selftest(std::ostream& out);

}  // namespace padsol
