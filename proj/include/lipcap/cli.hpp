#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lipcap {

// Runs the lipcap command line; args exclude the program name.
// Exit status: 0 success, 1 computation error (JSON error object emitted),
// 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lipcap
