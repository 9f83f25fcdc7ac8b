#ifndef QDICH_CLI_HPP
#define QDICH_CLI_HPP

#include <string>
#include <vector>

namespace qdich {

// exit codes: 0 success, 1 validation error, 2 solver non-convergence,
// 3 verification failure
int run_command(const std::vector<std::string>& args);

}  // namespace qdich

#endif
