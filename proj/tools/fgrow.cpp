#include "fgrow/cli.hpp"

int main(int argc, char** argv) { return fgrow::run_cli(argc, argv); }
