#pragma once

namespace reldev::cli {

// Parses and executes one command line. Returns the process exit status:
// 0 on success, 1 when a computation rejects its inputs or a verification
// verdict fails, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace reldev::cli
