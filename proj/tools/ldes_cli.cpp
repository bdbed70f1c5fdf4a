#include "ldes/report.hpp"

int main(int argc, char** argv) { return ldes::report::run_cli(argc, argv); }
