#include <iostream>
#include <vector>

#include "motivic/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    motivic::CommandResult res = motivic::run_command(args);
    if (!res.out.empty()) std::cout << res.out;
    if (!res.err.empty()) std::cerr << res.err;
    return res.status;
}
