#include "polarlink/cli.hpp"

int main(int argc, char** argv) { return polarlink::run_cli(argc, argv); }
