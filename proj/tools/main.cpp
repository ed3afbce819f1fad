#include "qci/cli.hpp"

int main(int argc, char** argv) { return qci::cli::run_cli(argc, argv); }
