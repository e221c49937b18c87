#pragma once

#include <iosfwd>

namespace turlab::cli {

enum ExitCode : int {
    exit_pass = 0,
    exit_bound_fail = 1,
    exit_structural = 2,
    exit_io = 3,
};

/// Full command-line entry point. Writes results to `out` (or the
/// --output file) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace turlab::cli
