/**
 * @file ga.cpp
 * @brief Geometric algebra core.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/ga.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>

#include "clifsig/error.hpp"

namespace clifsig::ga {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error("geometric algebra dimension " + std::to_string(dim) +
                " outside supported range 1.." + std::to_string(kMaxDim));
  }
}

void check_same_dim(const Multivector& a, const Multivector& b) {
  if (a.dim() != b.dim()) {
    throw Error("multivector dimension mismatch: G_" + std::to_string(a.dim()) +
                " vs G_" + std::to_string(b.dim()));
  }
}

}  // namespace

AlgebraTable::AlgebraTable(int dim) : dim_(dim) {
  const std::size_t n = blade_count();
  signs_.resize(n * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      signs_[(static_cast<std::size_t>(a) << dim_) | b] =
          static_cast<std::int8_t>(blade_product_sign(a, b));
    }
  }
}

const AlgebraTable& AlgebraTable::of(int dim) {
  check_dim(dim);
  static std::array<std::unique_ptr<AlgebraTable>, kMaxDim + 1> tables;
  static std::array<std::once_flag, kMaxDim + 1> flags;
  std::call_once(flags[dim], [dim] { tables[dim].reset(new AlgebraTable(dim)); });
  return *tables[dim];
}

void AlgebraTable::multiply(std::span<const double> a, std::span<const double> b,
                            std::span<double> out) const {
  const std::size_t n = blade_count();
  std::fill(out.begin(), out.begin() + n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const std::int8_t* row = signs_.data() + (static_cast<std::size_t>(i) << dim_);
    for (std::uint32_t j = 0; j < n; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      out[i ^ j] += row[j] * ai * bj;
    }
  }
}

Multivector::Multivector(int dim) : dim_(dim) {
  check_dim(dim);
  coeffs_.assign(std::size_t{1} << dim, 0.0);
}

Multivector::Multivector(int dim, std::vector<double> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  check_dim(dim);
  if (coeffs_.size() != (std::size_t{1} << dim)) {
    throw Error("multivector of G_" + std::to_string(dim) + " needs " +
                std::to_string(std::size_t{1} << dim) + " coefficients, got " +
                std::to_string(coeffs_.size()));
  }
}

Multivector Multivector::scalar(double s, int dim) {
  Multivector m(dim);
  m.coeffs_[0] = s;
  return m;
}

Multivector Multivector::basis(int k, int dim) {
  if (k < 1 || k > dim) {
    throw Error("generator e_" + std::to_string(k) + " does not exist in G_" +
                std::to_string(dim));
  }
  return blade(BladeIndex{std::uint32_t{1} << (k - 1)}, 1.0, dim);
}

Multivector Multivector::blade(BladeIndex index, double value, int dim) {
  Multivector m(dim);
  if (index.bits >= m.size()) {
    throw Error("blade bitmask " + std::to_string(index.bits) + " out of range for G_" +
                std::to_string(dim));
  }
  m.coeffs_[index.bits] = value;
  return m;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  check_same_dim(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  check_same_dim(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  check_same_dim(a, b);
  Multivector out(a.dim());
  AlgebraTable::of(a.dim()).multiply(a.coeffs_, b.coeffs_, out.coeffs_);
  return out;
}

Multivector Multivector::even() const {
  Multivector out(dim_);
  for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
    if (BladeIndex{i}.grade() % 2 == 0) out.coeffs_[i] = coeffs_[i];
  }
  return out;
}

Multivector Multivector::odd() const {
  Multivector out(dim_);
  for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
    if (BladeIndex{i}.grade() % 2 == 1) out.coeffs_[i] = coeffs_[i];
  }
  return out;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::string Multivector::to_string() const {
  std::string s;
  char buf[64];
  for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    if (!s.empty()) s += " + ";
    std::snprintf(buf, sizeof buf, "%.17g", coeffs_[i]);
    s += buf;
    if (i != 0) {
      s += "*e";
      for (int k = 0; k < dim_; ++k) {
        if (i & (1u << k)) s += std::to_string(k + 1);
      }
    }
  }
  return s.empty() ? "0" : s;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

Multivector pseudoscalar(int dim) {
  if (!is_pseudoscalar_dim(dim)) {
    throw Error("pseudoscalar requires L = 4n+3 (3 or 7 supported), got L = " +
                std::to_string(dim));
  }
  return Multivector::blade(BladeIndex{(std::uint32_t{1} << dim) - 1}, 1.0, dim);
}

Multivector pseudovector(int dim) {
  if (!is_pseudoscalar_dim(dim)) {
    throw Error("pseudovector I_{L-1} requires L = 4n+3, got L = " + std::to_string(dim));
  }
  return Multivector::blade(BladeIndex{(std::uint32_t{1} << (dim - 1)) - 1}, 1.0, dim);
}

Multivector grade_project(const Multivector& a, int grade) {
  Multivector out(a.dim());
  if (grade < 0 || grade > a.dim()) return out;
  auto src = a.coeffs();
  auto dst = out.coeffs();
  for (std::uint32_t i = 0; i < src.size(); ++i) {
    if (BladeIndex{i}.grade() == grade) dst[i] = src[i];
  }
  return out;
}

bool is_idempotent(const Multivector& a, double tol) {
  if (!(tol >= 0.0)) throw Error("is_idempotent: tolerance must be non-negative");
  return (a * a - a).max_abs() <= tol;
}

}  // namespace clifsig::ga
