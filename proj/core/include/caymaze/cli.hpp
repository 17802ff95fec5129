#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace caymaze {

// Exit codes: 0 success, 1 usage/parse error, 2 budget or resource
// exhausted, 3 invariant violation (oracle mismatch / failed check).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace caymaze
