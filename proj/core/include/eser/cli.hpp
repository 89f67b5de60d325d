#ifndef ESER_CLI_HPP
#define ESER_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace eser {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;

/// Entry point of the `eser` tool. `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eser

#endif  // ESER_CLI_HPP
