#include "mldtw/cli.hpp"

int main(int argc, char** argv) { return mldtw::run_cli(argc, argv); }
