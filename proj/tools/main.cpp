#include "runner.hpp"

int main(int argc, char** argv) { return qjackson::cli::run(argc, argv); }
