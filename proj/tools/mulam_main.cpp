#include "mulam/harness.hpp"

int main(int argc, char** argv) { return mulam::cli_main(argc, argv); }
