#include "isoschatten/cli.hpp"

int main(int argc, char** argv) { return isoschatten::cli_main(argc, argv); }
