#pragma once

#include <ostream>

namespace unicrit::cli {

// Full CLI entry point; returns the process exit code
// (0 ok, 2 usage, 3 budget, 4 dynamical precondition).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace unicrit::cli
