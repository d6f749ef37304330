#pragma once

#include <xaikg/error.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace xaikg::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kData = 2,
    kSchema = 3,
    kConflict = 4,  // unknown id or conflict
};

int exit_code(ErrorCode code) noexcept;

/// Runs one command line (without the program name). Machine-readable JSON goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xaikg::cli
