#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gamblekit {

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitValidation = 2,
    kExitIo = 3,
};

/// Runs one gamblekit command. `args` excludes the program name. Data goes
/// to `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gamblekit
