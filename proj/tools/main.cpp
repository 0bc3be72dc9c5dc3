#include "cli.hpp"

int main(int argc, char** argv) { return logimap::cli::run(argc, argv); }
