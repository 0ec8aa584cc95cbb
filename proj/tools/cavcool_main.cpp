#include "cavcool/run.hpp"

int main(int argc, char** argv) { return cavcool::run_cli(argc, argv); }
