#include "qvi/cli.hpp"

int main(int argc, char** argv) { return qvi::run_cli(argc, argv); }
