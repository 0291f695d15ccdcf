#include "pcurv_cli/commands.hpp"

int main(int argc, char** argv) { return pcurv::cli::run_tool("pcurv", argc, argv); }
