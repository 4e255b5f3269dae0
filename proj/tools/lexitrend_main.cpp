#include <iostream>
#include <string>
#include <vector>

#include "lexitrend/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lexitrend::report::run(args, std::cout, std::cerr);
}
