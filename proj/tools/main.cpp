#include "lca/io.hpp"

int main(int argc, char** argv) { return lca::cli_main(argc, argv); }
