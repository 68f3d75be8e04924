#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zarex::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kSchema = 3,
    kGuard = 4,
    kUnknownCheck = 5,
    kPrecondition = 6,
    kIo = 7,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zarex::cli
