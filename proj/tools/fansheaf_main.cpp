#include <iostream>
#include <vector>

#include "fansheaf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  fansheaf::cli::RunResult res = fansheaf::cli::run(std::move(args));
  std::cout << res.out;
  std::cerr << res.err;
  return res.code;
}
