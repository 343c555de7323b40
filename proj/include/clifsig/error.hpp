/**
 * @file error.hpp
 * @brief Exception type shared by all clifsig modules.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace clifsig {

/// Raised for contract violations: dimension/shape mismatch, invalid
/// multipliers, malformed files.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clifsig
