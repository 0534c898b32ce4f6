#include "dqi/cli.hpp"

int main(int argc, char** argv) { return dqi::run_cli(argc, argv); }
