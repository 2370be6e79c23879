#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace capcall::cli {

/// Exit codes of run().
enum ExitCode : int {
    ok = 0,
    config_error = 1,       ///< bad flags, config or domain input
    solver_error = 2,       ///< the solve failed with a typed solver error
    verification_failed = 3,
};

/// Runs one command; `args` excludes the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace capcall::cli
