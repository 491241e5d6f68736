#include "dmbst/cli.hpp"

int main(int argc, char** argv) { return dmbst::run_cli(argc, argv); }
