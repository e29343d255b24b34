#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fareycorr::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBadArguments = 2,
  kIoError = 3,
  kResourceCap = 4,
};

/// Entry point shared by the executable and the tests. args[0] is the
/// program name. Reports go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fareycorr::cli
