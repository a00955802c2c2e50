#include "lpacf/cli.hpp"

int main(int argc, char** argv) { return lpacf::cli_main(argc, argv); }
