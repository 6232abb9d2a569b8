// Runs every acceptance criterion and prints one line per criterion.
#include "cclass/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
  bool as_json = argc > 1 && std::strcmp(argv[1], "--json") == 0;
  auto results = cclass::run_acceptance();
  if (as_json) std::cout << cclass::acceptance_json(results).dump(2) << "\n";
  else std::cout << cclass::acceptance_text(results);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
