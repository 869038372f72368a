#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dba::cli {

// Process exit codes. No others are ever returned.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kValidationError = 4,
  kStrictEvalError = 5,
};

// Entry point shared by the `dba` binary and the tests. args[0] is the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dba::cli
