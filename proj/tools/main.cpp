#include "cli.hpp"

int main(int argc, char** argv) { return fosched::cli::main(argc, argv); }
