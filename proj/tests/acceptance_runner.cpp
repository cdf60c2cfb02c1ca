// Runs every verification suite and prints one line per suite; exits
// non-zero if any fails. `ctest` drives this as the acceptance gate.
#include <cstdlib>
#include <iostream>

#include "modal/acceptance.hpp"

int main() {
  bool all_passed = true;
  for (const auto& r : modal::run_acceptance({})) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    all_passed = all_passed && r.passed;
  }
  return all_passed ? EXIT_SUCCESS : EXIT_FAILURE;
}
