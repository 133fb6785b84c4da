#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace bloomtax::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,    // bad flags, missing files, IO failures
  kPartialFailure = 2  // some items could not be classified
};

/// Environment variable consulted when --wordnet is not given.
inline constexpr const char* kWordnetEnv = "WNSEARCHDIR";

/// Runs the bloomtax command line; args[0] is the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bloomtax::cli
