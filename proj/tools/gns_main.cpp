#include <vector>
#include <string>

#include "gns/cli.hpp"

int main(int argc, char** argv) {
  return gns::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
