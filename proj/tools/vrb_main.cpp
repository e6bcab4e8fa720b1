#include "vrb/cli.hpp"

int main(int argc, char** argv) { return vrb::cli::run(argc, argv); }
