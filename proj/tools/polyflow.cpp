#include "polyflow/cli.hpp"

int main(int argc, char** argv) { return polyflow::cli_main(argc, argv); }
