#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rydmoc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsage = 2;

/**
 * Entry point of the `rydmoc` tool. args[0] is the program name.
 * Subcommands: rates, bound, efficiency, spectrum, sweep, optimize, validate.
 * Data goes to `out` (or --out PATH), diagnostics to `err`.
 * Returns 0 on success, 1 on invalid input or a failed regime check,
 * 2 on a usage error.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv);

}  // namespace rydmoc
