#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace emonet::cli {

// Runs the command line; returns the process exit code (0 ok, 2 config error,
// 3 data error, 4 degenerate statistics). args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace emonet::cli
