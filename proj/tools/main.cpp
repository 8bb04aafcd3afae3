#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const gdet::cli::CommandResult r = gdet::cli::run({argv + 1, argv + argc});
  std::cout << r.out << std::flush;
  std::cerr << r.err << std::flush;
  return r.exit_code;
}
