#include "binet/cli.hpp"

int main(int argc, char** argv) { return binet::cli_main(argc, argv); }
