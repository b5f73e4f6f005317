#include "cogmap/cli.hpp"

int main(int argc, char** argv) { return cogmap::cli_main(argc, argv); }
