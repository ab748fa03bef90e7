#include "supershape/cli.hpp"

int main(int argc, char** argv) { return supershape::cli::main(argc, argv); }
