#include "cli/commands.hpp"

int main(int argc, char** argv) { return condvol::cli::run(argc, argv); }
