#include "streampack/cli.hpp"

int main(int argc, char** argv) { return streampack::cli::run(argc, argv); }
