#include <iostream>
#include <string>
#include <vector>

#include "rscat/commands.hpp"

int main(int argc, char* argv[]) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const rscat::CliResult result = rscat::run_cli(args);
    if (!result.output.empty()) std::cout << result.output;
    if (!result.error.empty()) std::cerr << result.error << "\n";
    return result.exit_code;
}
