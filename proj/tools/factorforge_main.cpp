#include <factorforge/cli.hpp>

int main(int argc, char** argv) { return factorforge::cli::run(argc, argv); }
