#include <string>
#include <vector>

#include "lve/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lve::cli::run(args);
}
