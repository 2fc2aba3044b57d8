#include "cli.hpp"

auto main(int argc, char * argv[]) -> int
{
    return dichro::cli::run(argc, argv, std::cout, std::cerr);
}
