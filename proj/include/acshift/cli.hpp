#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acshift {

/// Environment variable holding the default worker-thread count.
inline constexpr const char* threads_env = "ACSHIFT_THREADS";

/// Runs one CLI invocation (args exclude the program name). Returns 0 on
/// success, 1 for a solver or I/O failure and 2 for usage or config errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace acshift
