#include "qmock/cli.hpp"

int main(int argc, char** argv) { return qmock::run_cli(argc, argv); }
