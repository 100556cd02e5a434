#include <iostream>

#include "surfguard/app/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return surfguard::app::run(argc, argv, std::cout, std::cerr);
}
