#include "sturmint/cli/app.hpp"

int main(int argc, char** argv) { return sturmint::cli::run(argc, argv); }
