#ifndef MOTIVIC_CLI_HPP
#define MOTIVIC_CLI_HPP

#include <string>
#include <vector>

namespace motivic {

struct CommandResult {
    int status = 0;  // 0 ok, 1 verification failure, 2 input error
    std::string out;
    std::string err;
};

/// Run one CLI invocation (argv without the program name). Never throws;
/// errors land in `err` with the documented exit codes.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace motivic

#endif
