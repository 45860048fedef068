#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace streampack::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default seed for gen and vsched.
inline constexpr const char* kSeedEnv = "STREAMPACK_SEED";

/// Run one subcommand. args excludes the program name. JSON reports and
/// generated streams go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace streampack::cli
