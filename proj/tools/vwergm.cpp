#include "vwergm/cli.hpp"

int main(int argc, char** argv) { return vwergm::cli::main(argc, argv); }
