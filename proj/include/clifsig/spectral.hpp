/**
 * @file spectral.hpp
 * @brief Discrete Fourier transform of G_3-valued fields with the unit
 *        pseudoscalar I_3 as imaginary unit, plus frequency-grid bookkeeping.
 *
 * Conventions:
 *  - forward:  G(w) = sum_x g(x) exp(-I_3 2pi sum_k x_k w_k / N_k), unnormalized
 *  - inverse:  g(x) = (1/prod N_k) sum_w G(w) exp(+I_3 ...)
 *  - bin coordinates are signed integers in [-ceil(N/2)+1, floor(N/2)]
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "clifsig/field.hpp"

namespace clifsig::spectral {

/// Maps DFT bins to signed integer frequency vectors and tracks the bins
/// that have no distinct -w partner (DC and any bin with an axis at Nyquist).
class FrequencyGrid {
 public:
  explicit FrequencyGrid(Shape shape);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return size_; }

  /// Signed coordinate of DFT index i on an axis with n samples.
  static long bin_coordinate(std::size_t i, std::size_t n);

  long omega(std::size_t flat, std::size_t axis) const;
  std::vector<long> omega(std::size_t flat) const;
  /// Flat index of the bin holding the given signed coordinates (taken modulo the grid).
  std::size_t index_of(std::span<const long> coords) const;

  /// Bin reached by negating every coordinate modulo the grid.
  std::size_t negate(std::size_t flat) const { return negation_[flat]; }
  bool is_exceptional(std::size_t flat) const { return exceptional_[flat] != 0; }
  const std::vector<std::uint8_t>& exceptional_mask() const { return exceptional_; }

  bool operator==(const FrequencyGrid& other) const { return shape_ == other.shape_; }

 private:
  Shape shape_;
  std::size_t size_;
  std::vector<std::size_t> negation_;
  std::vector<std::uint8_t> exceptional_;
};

enum class Direction { forward, inverse };

MultivectorField forward_ft(const MultivectorField& g);
MultivectorField inverse_ft(const MultivectorField& G);

/// Largest grid accepted by brute_force_ft.
inline constexpr std::size_t kBruteForceMaxCells = 4096;

/// Literal O(M^2) evaluation of the transform sum with the kernel
/// cos(phi) -/+ I_3 sin(phi) applied by geometric product. Test oracle.
MultivectorField brute_force_ft(const MultivectorField& g, Direction direction);

/// f_e(x) = (f(x) + f(-x))/2, f_o(x) = (f(x) - f(-x))/2 with -x taken modulo the grid.
std::pair<MultivectorField, MultivectorField> even_odd_split(const MultivectorField& f);
std::pair<ScalarField, ScalarField> even_odd_split(const ScalarField& f);

/// Spectrum of a real signal written as F = F_e - I_3 F_o.
struct SpectrumSplit {
  ScalarField even;  ///< F_e, the scalar part
  ScalarField odd;   ///< F_o, minus the pseudoscalar coefficient
};

SpectrumSplit split_spectrum(const MultivectorField& F);

}  // namespace clifsig::spectral
