#pragma once

#include <ostream>
#include <span>
#include <string>

namespace indexforge {

/// Entry point of the indexforge command. Returns the process exit code:
/// 0 success, 2 validation/usage, 3 I/O, 4 numerical failure.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace indexforge
