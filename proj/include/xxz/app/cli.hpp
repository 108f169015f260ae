#pragma once

#include <ostream>

namespace xxz::app {

// Full command-line entry point; returns the process exit status:
// 0 success, 1 criterion failure or runtime error, 2 usage error,
// 3 infeasible request (or skipped criteria without failures).
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace xxz::app
