#include "reachprobe/cli.hpp"

int main(int argc, char** argv) { return reachprobe::cli::main_entry(argc, argv); }
