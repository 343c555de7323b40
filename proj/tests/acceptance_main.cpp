// SPDX-License-Identifier: Apache-2.0
// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>

#include "clifsig/acceptance.hpp"

int main() {
  const auto results = clifsig::acceptance::run_all();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-4s %2d %-36s residual=%.3e tol=%.0e  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.check.c_str(), r.residual, r.tolerance, r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
