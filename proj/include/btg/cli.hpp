#pragma once

#include <ostream>

namespace btg {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitCollision = 2, kExitNoWitness = 3 };

/// Entry point of the btg command line tool. Reports go to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace btg
