#include "rabistark/cli.hpp"

int main(int argc, char** argv) { return rabistark::cli_main(argc, argv); }
