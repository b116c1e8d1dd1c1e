#include "pdm/cli.hpp"

int main(int argc, char** argv) { return pdm::main_entry(argc, argv); }
