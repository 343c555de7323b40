/**
 * @file field.hpp
 * @brief Sampled fields over rectangular grids: real scalar fields and
 *        G_L-valued multivector fields.
 *
 * Grids are addressed with axis 0 varying fastest, so a row-major image of
 * width W and height H is the shape {W, H} with x1 along the columns.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "clifsig/ga.hpp"

namespace clifsig {

using Shape = std::vector<std::size_t>;

std::size_t cell_count(const Shape& shape);

enum class Domain { spatial, frequency };

struct ScalarField {
  Shape shape;
  std::vector<double> values;

  static ScalarField zeros(Shape shape);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

/// Three real component fields, e.g. the e1/e2/e3 coefficients of a vector field.
using VectorField3 = std::array<ScalarField, 3>;

double max_abs(const ScalarField& f);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

class MultivectorField {
 public:
  /// All-zero field.
  MultivectorField(Shape shape, Domain domain, int dim = 3);

  const Shape& shape() const { return shape_; }
  Domain domain() const { return domain_; }
  int dim() const { return dim_; }
  std::size_t cell_count() const { return cells_; }
  std::size_t blade_count() const { return blades_; }

  std::span<double> cell(std::size_t i) { return {coeffs_.data() + i * blades_, blades_}; }
  std::span<const double> cell(std::size_t i) const {
    return {coeffs_.data() + i * blades_, blades_};
  }
  ga::Multivector at(std::size_t i) const;
  void set(std::size_t i, const ga::Multivector& m);

  double coeff(std::size_t i, ga::BladeIndex blade) const { return cell(i)[blade.bits]; }
  double& coeff(std::size_t i, ga::BladeIndex blade) { return cell(i)[blade.bits]; }

  /// Plane of one blade coefficient across all cells.
  ScalarField component(ga::BladeIndex blade) const;
  void set_component(ga::BladeIndex blade, const ScalarField& values);

  std::span<const double> data() const { return coeffs_; }
  std::span<double> data() { return coeffs_; }

  MultivectorField& operator+=(const MultivectorField& other);
  MultivectorField& operator-=(const MultivectorField& other);
  MultivectorField& operator*=(double s);
  friend MultivectorField operator+(MultivectorField a, const MultivectorField& b) { return a += b; }
  friend MultivectorField operator-(MultivectorField a, const MultivectorField& b) { return a -= b; }
  friend MultivectorField operator*(double s, MultivectorField a) { return a *= s; }

  /// Cellwise geometric product a(x) * b(x).
  friend MultivectorField operator*(const MultivectorField& a, const MultivectorField& b);

  double max_abs() const;
  /// Largest |coefficient| over blades outside `keep` (bitmask list).
  double max_abs_outside(std::span<const std::uint32_t> keep) const;

 private:
  Shape shape_;
  Domain domain_;
  int dim_;
  std::size_t cells_;
  std::size_t blades_;
  std::vector<double> coeffs_;
};

double max_abs_diff(const MultivectorField& a, const MultivectorField& b);

/// Embeds a real field as the scalar part of a G_dim field.
MultivectorField lift(const ScalarField& f, Domain domain = Domain::spatial, int dim = 3);

/// Scalar (grade-0) part of every cell.
ScalarField scalar_part(const MultivectorField& g);

void require_same_shape(const Shape& a, const Shape& b, const char* what);

}  // namespace clifsig
