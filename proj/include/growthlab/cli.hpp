#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace growthlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInfeasible = 2,       ///< feasibility gate failed; report on stderr
    kExitInvalidParams = 3,    ///< validation or usage errors in the inputs
    kExitNoConvergence = 4,    ///< strict solver did not converge
    kExitReproduceMismatch = 5 ///< reference-table comparison beyond tolerance
};

/// Runs the CLI with the given arguments (not including argv[0]). Data goes
/// to `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace growthlab
