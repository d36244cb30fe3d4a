#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vfdt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `vfdt` tool. Data goes to files or `out`, diagnostics
/// to `err`. Returns 0 on success, 1 on runtime errors, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vfdt::cli
