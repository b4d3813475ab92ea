#include "pcy/cli.hpp"

int main(int argc, char** argv) { return pcy::run_cli(argc, argv); }
