#include <iostream>
#include <string>
#include <vector>

#include "shrinkrisk/cli.h"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return shrinkrisk::cli::run(args, std::cout, std::cerr);
}
