#ifndef UAVSIM_TOOLS_CLI_H_
#define UAVSIM_TOOLS_CLI_H_

#include <iosfwd>

namespace uavsim::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;   // bad flags, unreadable or invalid config
inline constexpr int kExitRuntimeError = 2;  // simulation or output failure

// Environment variable consulted when neither --out nor output_dir is set.
inline constexpr const char* kOutputDirEnv = "UAVSIM_OUTPUT_DIR";

// Entry point of the `uavsim` tool, parameterised on streams for testing.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace uavsim::cli

#endif  // UAVSIM_TOOLS_CLI_H_
