#include "monadcert/cli.hpp"

int main(int argc, char** argv) { return monadcert::cli::run(argc, argv); }
