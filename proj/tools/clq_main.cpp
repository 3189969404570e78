#include "clq/cli.hpp"

int main(int argc, char** argv) { return clq::run_cli(argc, argv); }
