/**
 * @file ga.hpp
 * @brief Dense arithmetic in the real Euclidean geometric algebra G_L.
 *
 * Blades are addressed by bitmask: bit k set means generator e_{k+1} is a
 * factor of the blade, factors taken in ascending order. Coefficients are
 * stored densely, one double per blade, in ascending bitmask order.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace clifsig::ga {

/// Largest algebra dimension supported (2^7 = 128 blades).
inline constexpr int kMaxDim = 7;

struct BladeIndex {
  std::uint32_t bits = 0;

  constexpr int grade() const { return std::popcount(bits); }
  friend constexpr bool operator==(BladeIndex, BladeIndex) = default;
};

/// Sign of the product of two basis blades with e_k^2 = +1, obtained by
/// counting the transpositions needed to bring the factors into canonical
/// order. The resulting blade is always a ^ b.
constexpr int blade_product_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

/// Precomputed product signs for all blade pairs of G_L. One immutable
/// instance per dimension, shared across threads.
class AlgebraTable {
 public:
  static const AlgebraTable& of(int dim);

  int dim() const { return dim_; }
  std::size_t blade_count() const { return std::size_t{1} << dim_; }

  int sign(std::uint32_t a, std::uint32_t b) const {
    return signs_[(static_cast<std::size_t>(a) << dim_) | b];
  }

  /// out = a * b for dense coefficient spans of length blade_count().
  /// `out` must not alias the inputs.
  void multiply(std::span<const double> a, std::span<const double> b,
                std::span<double> out) const;

 private:
  explicit AlgebraTable(int dim);

  int dim_;
  std::vector<std::int8_t> signs_;
};

class Multivector {
 public:
  /// The zero element of G_dim.
  explicit Multivector(int dim = 3);
  Multivector(int dim, std::vector<double> coeffs);

  static Multivector scalar(double s, int dim = 3);
  /// Generator e_k, 1-based as in the usual notation.
  static Multivector basis(int k, int dim = 3);
  static Multivector blade(BladeIndex index, double value, int dim = 3);

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  double operator[](BladeIndex index) const { return coeffs_.at(index.bits); }
  double& operator[](BladeIndex index) { return coeffs_.at(index.bits); }
  double scalar_part() const { return coeffs_[0]; }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a *= 1.0 / s; }
  /// Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  friend bool operator==(const Multivector&, const Multivector&) = default;

  /// Part made of even-grade blades.
  Multivector even() const;
  /// Part made of odd-grade blades.
  Multivector odd() const;
  double max_abs() const;

  std::string to_string() const;

 private:
  int dim_;
  std::vector<double> coeffs_;
};

Multivector geometric_product(const Multivector& a, const Multivector& b);

/// I_L = e_1 ... e_L. Requires L = 4n + 3, where I_L is central and squares to -1.
Multivector pseudoscalar(int dim);

/// I_{L-1} = e_1 ... e_{L-1}.
Multivector pseudovector(int dim);

Multivector grade_project(const Multivector& a, int grade);

/// max |a*a - a| <= tol.
bool is_idempotent(const Multivector& a, double tol);

/// True for dimensions of the form 4n + 3 within the supported range.
constexpr bool is_pseudoscalar_dim(int dim) { return dim >= 3 && dim <= kMaxDim && dim % 4 == 3; }

}  // namespace clifsig::ga
