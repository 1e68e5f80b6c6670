#include "cli/commands.hpp"

int main(int argc, char** argv) { return fdo::cli::main(argc, argv); }
