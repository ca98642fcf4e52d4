#pragma once

#include <cstdint>
#include <iosfwd>

namespace affine {

/// Runs the randomized invariant suites of every module, printing one line
/// per suite. Returns the number of failed checks (0 means all green).
int run_selftest(std::ostream& out, uint64_t seed = 20120822);

}  // namespace affine
