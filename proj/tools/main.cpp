#include "thirring/cli.hpp"

int main(int argc, char** argv) { return thirring::cli::run(argc, argv); }
