#include "acsum/cli.hpp"

int main(int argc, char** argv) { return acsum::cli::main_entry(argc, argv); }
