#include "rydmoc/cli.hpp"

int main(int argc, char** argv) { return rydmoc::run_cli(argc, argv); }
