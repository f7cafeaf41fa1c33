#ifndef TAILCOND_CLI_CLI_HPP
#define TAILCOND_CLI_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tailcond::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; files are written where --out points.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailcond::cli

#endif  // TAILCOND_CLI_CLI_HPP
