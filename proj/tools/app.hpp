#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hochbv::cli {

// Exit codes: 0 every selected check passed, 1 a check failed, 2 bad input
// or configuration.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hochbv::cli
