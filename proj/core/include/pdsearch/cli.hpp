#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdsearch::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitInvariant = 4;

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (or to files named by flags), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// argc/argv convenience wrapper around the vector overload.
int run(int argc, const char* const* argv);

}  // namespace pdsearch::cli
