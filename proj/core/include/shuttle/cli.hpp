#ifndef SHUTTLE_CLI_HPP
#define SHUTTLE_CLI_HPP

#include <string>
#include <vector>

namespace shuttle::cli {

/// Top-level command driver. Returns 0 on success, 1 on validation or
/// usage errors, 2 on numerical failure.
int run_cli(int argc, const char* const* argv);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace shuttle::cli

#endif
