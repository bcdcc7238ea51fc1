#pragma once

#include <ostream>

namespace alignlab {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

// Entry point of the alignlab tool; diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace alignlab
