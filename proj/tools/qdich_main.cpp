#include <string>
#include <vector>

#include "qdich/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return qdich::run_command(args);
}
