#include "flpe/harness/commands.hpp"

#include <iostream>

int main( int argc, char** argv )
{
    return flpe::harness::run_cli( { argv + 1, argv + argc }, std::cout, std::cerr );
}
