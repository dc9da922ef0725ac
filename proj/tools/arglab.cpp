#include <iostream>

#include "argl/cli.hpp"

int main(int argc, char** argv) { return argl::run_main(argc, argv, std::cout, std::cerr); }
