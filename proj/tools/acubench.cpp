#include <string>
#include <vector>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  return acut::cli::run(std::vector<std::string>(argv, argv + argc));
}
