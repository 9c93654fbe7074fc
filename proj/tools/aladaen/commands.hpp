#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aladaen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitSuspended = 4;
inline constexpr int kExitFailure = 1;

/// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "ALADAEN_OUT";

/// Runs one command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aladaen::cli
