// One line per acceptance criterion; exit status is non-zero if any fails.

#include "pinball/verification.hpp"

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::stoull(argv[1]);
  int failed = 0;
  for (const auto& c : pinball::run_acceptance(seed)) {
    std::cout << "[" << std::setw(2) << c.id << "] " << (c.passed ? "PASS" : "FAIL") << "  " << c.title << " ("
              << std::fixed << std::setprecision(3) << c.seconds << " s / " << c.limit_seconds << " s): " << c.detail
              << std::defaultfloat << '\n';
    if (!c.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
