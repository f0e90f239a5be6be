#include "randfib/cli.hpp"

int main(int argc, char** argv) { return randfib::cli::run_main(argc, argv); }
