#include "liebih/cli.hpp"

int main(int argc, char** argv) { return liebih::cli::run(argc, argv); }
