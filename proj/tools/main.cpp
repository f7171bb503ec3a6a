#include "matdiff/cli.hpp"

int main(int argc, char** argv) { return matdiff::cli::run_cli(argc, argv); }
