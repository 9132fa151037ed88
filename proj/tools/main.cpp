#include "cluspath/cli.hpp"

int main(int argc, char** argv) { return cluspath::main_cli(argc, argv); }
