#pragma once

#include <string>
#include <vector>

namespace fracdiff {

/// Subcommand dispatch for the fracdiff tool. `args` excludes the program
/// name. Returns 0 on success, 1 on validation/usage errors, 2 on runtime
/// failures (instability, non-finite fields, failed fits, I/O).
int dispatch(const std::vector<std::string>& args);

}  // namespace fracdiff
