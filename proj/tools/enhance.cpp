#include <iostream>
#include <string>
#include <vector>

#include "enhance/pipeline.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "-h" || args[0] == "--help") {
        std::cout << enhance::pipeline::usage();
        return args.empty() ? 2 : 0;
    }
    const int status = enhance::pipeline::run(args, std::cerr);
    if (status == 2) std::cerr << enhance::pipeline::usage();
    return status;
}
