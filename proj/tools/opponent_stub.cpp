// Line-protocol opponent for exercising the external mode.
// Usage: opponent_stub <cofinite|garbage|silent|quit>
#include <iostream>
#include <string>

#include "inferlab/catalog.hpp"

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "cofinite";
  const inferlab::Learner cofinite = inferlab::catalog::learner("COFINITE");
  std::string line;
  while (std::getline(std::cin, line)) {
    if (mode == "quit") return 0;
    if (mode == "silent") continue;
    if (mode == "garbage") {
      std::cout << "hello" << std::endl;
      continue;
    }
    if (line.rfind("Q", 0) != 0) {
      std::cout << "E bad request" << std::endl;
      continue;
    }
    const std::string text = line.size() > 2 ? line.substr(2) : "";
    const auto h = cofinite.conjecture_on(inferlab::DataSequence::parse(text));
    std::cout << "H " << h.label << " " << h.extension.to_string() << std::endl;
  }
  return 0;
}
