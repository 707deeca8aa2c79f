#include "cli.hpp"

int main(int argc, char** argv) { return ntw::cli::run(argc, argv, std::cout, std::cerr); }
