/**
 * @file field.cpp
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/field.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "clifsig/error.hpp"

namespace clifsig {

namespace {

std::string shape_string(const Shape& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

void require_same_layout(const MultivectorField& a, const MultivectorField& b) {
  require_same_shape(a.shape(), b.shape(), "multivector field");
  if (a.dim() != b.dim()) throw Error("multivector field algebra dimension mismatch");
}

}  // namespace

std::size_t cell_count(const Shape& shape) {
  if (shape.empty()) return 0;
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

void require_same_shape(const Shape& a, const Shape& b, const char* what) {
  if (a != b) {
    throw Error(std::string(what) + " shape mismatch: " + shape_string(a) + " vs " +
                shape_string(b));
  }
}

ScalarField ScalarField::zeros(Shape shape) {
  ScalarField f;
  f.values.assign(cell_count(shape), 0.0);
  f.shape = std::move(shape);
  return f;
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  require_same_shape(a.shape, b.shape, "scalar field");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

MultivectorField::MultivectorField(Shape shape, Domain domain, int dim)
    : shape_(std::move(shape)), domain_(domain), dim_(dim) {
  if (shape_.empty() || std::find(shape_.begin(), shape_.end(), 0u) != shape_.end()) {
    throw Error("field shape must be non-empty with positive extents, got " +
                shape_string(shape_));
  }
  if (dim < 1 || dim > ga::kMaxDim) throw Error("unsupported algebra dimension");
  cells_ = clifsig::cell_count(shape_);
  blades_ = std::size_t{1} << dim;
  coeffs_.assign(cells_ * blades_, 0.0);
}

ga::Multivector MultivectorField::at(std::size_t i) const {
  auto c = cell(i);
  return ga::Multivector(dim_, std::vector<double>(c.begin(), c.end()));
}

void MultivectorField::set(std::size_t i, const ga::Multivector& m) {
  if (m.dim() != dim_) throw Error("multivector dimension does not match field");
  std::copy(m.coeffs().begin(), m.coeffs().end(), cell(i).begin());
}

ScalarField MultivectorField::component(ga::BladeIndex blade) const {
  ScalarField out = ScalarField::zeros(shape_);
  for (std::size_t i = 0; i < cells_; ++i) out.values[i] = coeffs_[i * blades_ + blade.bits];
  return out;
}

void MultivectorField::set_component(ga::BladeIndex blade, const ScalarField& values) {
  require_same_shape(shape_, values.shape, "component");
  for (std::size_t i = 0; i < cells_; ++i) coeffs_[i * blades_ + blade.bits] = values.values[i];
}

MultivectorField& MultivectorField::operator+=(const MultivectorField& other) {
  require_same_layout(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

MultivectorField& MultivectorField::operator-=(const MultivectorField& other) {
  require_same_layout(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

MultivectorField& MultivectorField::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

MultivectorField operator*(const MultivectorField& a, const MultivectorField& b) {
  require_same_layout(a, b);
  MultivectorField out(a.shape_, a.domain_, a.dim_);
  const auto& table = ga::AlgebraTable::of(a.dim_);
  for (std::size_t i = 0; i < a.cells_; ++i) table.multiply(a.cell(i), b.cell(i), out.cell(i));
  return out;
}

double MultivectorField::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double MultivectorField::max_abs_outside(std::span<const std::uint32_t> keep) const {
  double m = 0.0;
  for (std::size_t i = 0; i < cells_; ++i) {
    for (std::uint32_t b = 0; b < blades_; ++b) {
      if (std::find(keep.begin(), keep.end(), b) != keep.end()) continue;
      m = std::max(m, std::abs(coeffs_[i * blades_ + b]));
    }
  }
  return m;
}

double max_abs_diff(const MultivectorField& a, const MultivectorField& b) {
  require_same_layout(a, b);
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

MultivectorField lift(const ScalarField& f, Domain domain, int dim) {
  MultivectorField g(f.shape, domain, dim);
  g.set_component(ga::BladeIndex{0}, f);
  return g;
}

ScalarField scalar_part(const MultivectorField& g) { return g.component(ga::BladeIndex{0}); }

}  // namespace clifsig
