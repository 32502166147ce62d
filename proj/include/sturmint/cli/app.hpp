#pragma once

#include <string>
#include <vector>

namespace sturmint::cli {

// Exit codes: 0 success, 2 input error, 3 numerical non-convergence,
// 4 internal error.
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace sturmint::cli
