// cli.hpp - batch front-end entry point
#pragma once

#include <string>
#include <vector>

namespace swiptlab {

// args excludes the program name.  Returns the process exit code:
// 0 success, 2 usage, 3 config, 4 numerical failure.
int cli_main(std::vector<std::string> args);

}  // namespace swiptlab
