#include "emonet/cli.hpp"

int main(int argc, char** argv) { return emonet::cli::run(argc, argv); }
