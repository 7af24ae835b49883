#include "zeroone/cli.hpp"

int main(int argc, char** argv) { return zeroone::cli_main(argc, argv); }
