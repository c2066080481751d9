#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conelab {

// Exit codes: 0 pass, 1 suite failure, 2 usage or invalid input, 3 semantic input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "3..7", "5", "3,5,7"; the token "m" as an upper end is resolved per row by the caller.
std::vector<int> parse_int_range(const std::string& text);

}  // namespace conelab
