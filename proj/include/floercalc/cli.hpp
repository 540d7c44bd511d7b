#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace floercalc {

// args = argv without the program name. Renders to the given streams and
// returns the process exit code: 0 success, 1 mathematical failure (the
// report is still rendered), 2 malformed input or flags.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace floercalc
