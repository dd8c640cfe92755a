#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace invislat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable naming the directory used when no output path is given.
inline constexpr const char* kOutputDirEnv = "INVISLAT_OUTPUT_DIR";

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invislat::cli
