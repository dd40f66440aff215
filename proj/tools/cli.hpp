#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pcomb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOutput = 3;
/// Numerical failure inside a computation, e.g. quadrature that did not converge.
inline constexpr int kExitInternal = 1;

/// Environment variable naming the default output directory of experiment subcommands.
inline constexpr const char* kOutputDirEnv = "PCOMB_OUTPUT_DIR";

/// Runs one CLI invocation; `args` excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcomb::cli
