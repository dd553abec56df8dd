#include "mpoq/cli/commands.hpp"

int main(int argc, char** argv) { return mpoq::cli::run(argc, argv); }
