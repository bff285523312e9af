#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hk {

// Batch entry point behind the hodgekit binary; args exclude the program
// name. Exit codes: 0 affirmative verdict, 1 negative verdict, 2 input
// error, 3 internal invariant failure (never expected).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hk
