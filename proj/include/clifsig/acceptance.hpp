/**
 * @file acceptance.hpp
 * @brief The end-to-end verification suite run by `clifsig selftest` and
 *        the acceptance test binary.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clifsig/field.hpp"
#include "clifsig/multipliers.hpp"

namespace clifsig::acceptance {

struct CheckResult {
  int id = 0;
  std::string check;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Options {
  /// Negative control: builds the quadrant-support multiplier with one
  /// quadrant's sign flipped, so that check must fail.
  bool inject_hahn_sign_fault = false;
};

std::vector<CheckResult> run_all(const Options& options = {});

/// Sum of a few cosines on an n x n grid with a nonzero mean.
ScalarField multicosine_image(std::size_t n = 16);

struct OrientationCase {
  std::string name;
  multipliers::MultiplierSpec spec;
};

/// Cases stored in the orientation-only regression fixture.
std::vector<OrientationCase> orientation_cases();

/// Fixture text compiled in at build time.
std::string_view orientation_fixture_text();

/// Parses "case <name> <n1> <n2>" blocks followed by n1*n2 values.
std::map<std::string, ScalarField> parse_orientation_fixture(std::string_view text);

double pearson(const ScalarField& a, const ScalarField& b);

}  // namespace clifsig::acceptance
