#pragma once
// Entry point of the `fnclass` tool, kept in a library so tests can drive it
// without spawning processes.

#include <iosfwd>
#include <string>
#include <vector>

namespace fnclass::cli {

// args excludes the program name. Returns the process exit code:
// 0 ok, 1 usage, 2 data, 3 numeric.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fnclass::cli
