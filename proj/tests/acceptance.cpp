// One line per acceptance criterion; exits nonzero unless all of them pass.
#include <cstring>
#include <iostream>

#include "app/app.hpp"

int main(int argc, char** argv) {
  bool deep = false;
  for (int k = 1; k < argc; ++k) deep = deep || std::strcmp(argv[k], "--deep") == 0;
  const auto results = phodge::app::run_acceptance(deep, 0);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << phodge::app::format_criterion(r) << '\n';
    passed += r.pass ? 1 : 0;
  }
  std::cout << "acceptance: " << passed << "/" << results.size() << " criteria pass\n";
  return passed == results.size() ? 0 : 1;
}
