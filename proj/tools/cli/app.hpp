#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebound::cli {

/// Full command-line surface, in-process. `args` excludes the program name.
/// Returns the process exit code; all output goes to the given streams.
int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace ebound::cli
