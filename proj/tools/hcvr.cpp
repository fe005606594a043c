#include "hcvr/cli.hpp"

int main(int argc, char** argv) { return hcvr::cli::run(argc, argv); }
