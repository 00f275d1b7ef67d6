#include "sgb/cli.hpp"

int main(int argc, char** argv) { return sgb::cli::run(argc, argv); }
