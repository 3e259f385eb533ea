#include <iostream>

#include "gfrob/commands.hpp"

int main(int argc, char** argv) { return gfrob::run_cli(argc, argv, std::cout, std::cerr); }
