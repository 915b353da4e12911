#include "cli_app.hpp"

int main(int argc, char** argv) { return limop::cli::run(argc, argv); }
