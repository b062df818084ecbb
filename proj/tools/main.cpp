#include "cli.hpp"

int main(int argc, char** argv) { return spinorlat::cli::run(argc, argv); }
