#include "bpcalc/cli.hpp"

int main(int argc, char** argv) { return bpcalc::main_entry(argc, argv); }
