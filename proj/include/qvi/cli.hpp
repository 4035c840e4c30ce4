#pragma once

// Command implementations behind the `qvi` executable. Each returns the
// process exit status:
//   0  success, or a solve stopped by tolerance
//   1  runtime failure (I/O, diverged solve)
//   2  usage or validation error
//   3  solve stopped at max_iter

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace qvi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMaxIter = 3;

/// example is one of "5.1", "5.2", "5.3", "all".
int cmd_reproduce(const std::string& example, const std::filesystem::path& output_dir, std::ostream& out,
                  std::ostream& err);

/// Writes <output.dir>/trace.csv and prints
/// "<stop_reason> iterations=<k> residual=<r> seed=<seed>".
int cmd_solve(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// Prints one PASS/FAIL line per property.
int cmd_check(const std::string& suite, std::uint64_t seed, std::ostream& out, std::ostream& err);

/// Argument parsing and dispatch for the executable.
int run_cli(int argc, char** argv);

}  // namespace qvi
