#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropmetz {

/// Entry point of the `tropmetz` tool; args exclude the program name.
/// Returns 0 on success, 1 on a domain error (including a failed check),
/// 2 on malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropmetz
