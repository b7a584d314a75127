#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpencil {

/// Exit codes of the command-line interface.
enum ExitCode : int {
  kExitOk = 0,           ///< success; for find-point, a verified point
  kExitObstruction = 1,  ///< certified local obstruction
  kExitExhausted = 2,    ///< search bounds exhausted (no claim of non-existence)
  kExitInvalid = 3,      ///< invalid input or usage
  kExitInternal = 4,     ///< internal consistency failure
  kExitMismatch = 5,     ///< replay: a recorded verdict was not reproduced
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpencil
