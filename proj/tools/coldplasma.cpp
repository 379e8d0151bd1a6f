#include "coldplasma/cli.hpp"

int main(int argc, char** argv) { return coldplasma::cli::run_main(argc, argv); }
