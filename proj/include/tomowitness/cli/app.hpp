#pragma once

#include <ostream>

namespace tomowitness::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kInvariantFailure = 3 };

/// Entry point of the tomowitness command. Never throws; every failure maps
/// to an exit code with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tomowitness::cli
