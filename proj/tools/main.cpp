#include "lfom/cli.hpp"

int main(int argc, char** argv) { return lfom::cli_main(argc, argv); }
