#include <iostream>

#include "randroot/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  auto parsed = randroot::cli::parse_args(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return randroot::cli::run(*parsed.config, std::cout, std::cerr);
}
