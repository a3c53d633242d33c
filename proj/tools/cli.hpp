#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blaine::cli {

enum ExitCode { kOk = 0, kNumerical = 1, kValidation = 2, kUsage = 64 };

struct CommandInfo {
    std::string path;                     // e.g. "tree split"
    std::vector<std::string> operations;  // library operations it exposes
};

const std::vector<CommandInfo>& command_table();

// args excludes the program name. Results go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blaine::cli
