#include "shuttle/cli.hpp"

int main(int argc, char** argv) { return shuttle::cli::run_cli(argc, argv); }
