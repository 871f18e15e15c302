#include "reldev/cli.hpp"

int main(int argc, char** argv) { return reldev::cli::run_cli(argc, argv); }
