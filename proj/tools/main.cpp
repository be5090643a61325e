#include "vide/cli.hpp"

int main(int argc, char** argv) { return vide::run_cli(argc, argv); }
