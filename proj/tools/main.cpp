#include "fairbc/cli.hpp"

int main(int argc, char** argv) { return fairbc::cli::run(argc, argv); }
