#include <iostream>

#include "client_cli/cli.hpp"

int main(int argc, char** argv) { return client::cli::dispatch(argc, argv, std::cout, std::cerr); }
