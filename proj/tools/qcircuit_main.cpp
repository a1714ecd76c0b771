#include "cli_app.hpp"

int main(int argc, char** argv) { return qcircuit::cli::run(argc, argv); }
