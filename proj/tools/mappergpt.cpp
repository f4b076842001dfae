#include "mappergpt/cli.hpp"

int main(int argc, char** argv) { return mappergpt::run_cli(argc, argv); }
