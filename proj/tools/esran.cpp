#include "esran/cli.hpp"

int main(int argc, char** argv) { return esran::harness::cli_main(argc, argv); }
