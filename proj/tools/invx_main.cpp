#include <string>
#include <vector>

#include "invx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return invx::run_cli(args);
}
