#include "stochsat/cli.hpp"

int main(int argc, char** argv) { return stochsat::cli::run(argc, argv); }
