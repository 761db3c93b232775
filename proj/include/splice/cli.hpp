#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splice {

// Command-line entry point; returns the process exit code.
// 0 success / property true, 1 property false, 2 usage or parse error,
// 3 unsupported input or undecided question.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splice
