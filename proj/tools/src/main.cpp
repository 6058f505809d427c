#include "dirode_cli/app.hpp"

int main(int argc, char** argv) { return dirode::cli::run_cli(argc, argv); }
