#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cwmmg::cli {

// Full command-line front end, separated from main() so tests can drive it.
// Exit codes: 0 ok, 1 domain or verification failure, 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwmmg::cli
