#pragma once

#include <iosfwd>

namespace attobs {

/// Built-in invariant quick-suite: group axioms of the symmetry group and its
/// actions, the lift consistency property (finite differences), and exactness
/// of the angular-acceleration extraction. Prints one pass/fail line per
/// check to `os` and returns true when everything passed. Deterministic.
bool run_selfcheck(std::ostream& os);

}  // namespace attobs
