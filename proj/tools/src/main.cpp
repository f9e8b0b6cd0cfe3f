#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto outcome = tsd::cli::run(args, std::cerr);
  std::cout << outcome.report << std::flush;
  return outcome.exit_code;
}
