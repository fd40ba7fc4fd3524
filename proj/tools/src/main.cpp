#include <iostream>
#include <string>
#include <vector>

#include "ifrlag_cli/app.hpp"

int main(int argc, char** argv) {
  return ifrlag::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
