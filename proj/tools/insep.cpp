#include <insep/cli.hpp>

int main(int argc, char** argv) { return insep::run_cli(argc, argv, std::cout, std::cerr); }
