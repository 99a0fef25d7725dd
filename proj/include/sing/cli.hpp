#pragma once

#include <ostream>

namespace sing {

// Entry point of singtool. Returns the process exit code: 0 when every check
// passes, 1 on a breach, 2 on a configuration or resolution error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sing
