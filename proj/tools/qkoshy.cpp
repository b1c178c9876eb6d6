#include "qkoshy/cli.hpp"

int main(int argc, char** argv) { return qkoshy::cli::main(argc, argv); }
