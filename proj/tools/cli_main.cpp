#include "vpart/cli.hpp"

int main(int argc, char** argv) { return vpart::cli::run(argc, argv); }
