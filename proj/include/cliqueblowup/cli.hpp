#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cliqueblowup {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1,
    kExitInvalidInput = 2,
    kExitResourceCap = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cliqueblowup
