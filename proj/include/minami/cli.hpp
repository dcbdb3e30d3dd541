#pragma once

#include <string>
#include <vector>

namespace minami::cli {

/// Entry point behind the minami_lab binary; args exclude the program name.
/// Exit codes: 0 success, 1 scientific failure (a bound or identity
/// violated, or an estimation failure), 2 usage or configuration error.
int run(std::vector<std::string> args);

}  // namespace minami::cli
