#pragma once

#include <iosfwd>

namespace qs::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kUsage = 2,
    kResource = 3,
    kInternal = 4, // an internal invariant broke; never expected
};

// Entry point shared by the qsearch binary and the tests. Environment defaults
// (QS_WORKERS, QS_SIEVE_LIMIT) are read from the process environment.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qs::cli
