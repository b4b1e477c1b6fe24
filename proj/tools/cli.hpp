#ifndef NORMDERIV_TOOLS_CLI_HPP
#define NORMDERIV_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace normderiv::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

/// Runs one command. `args` excludes the program name. The JSON report goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normderiv::cli

#endif  // NORMDERIV_TOOLS_CLI_HPP
