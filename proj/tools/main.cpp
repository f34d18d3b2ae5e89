#include "rodlif/cli.hpp"

int main(int argc, char** argv) { return rodlif::cli::run(argc, argv); }
