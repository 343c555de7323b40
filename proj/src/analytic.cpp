/**
 * @file analytic.cpp
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "clifsig/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "clifsig/error.hpp"
#include "clifsig/spectral.hpp"

namespace clifsig::analytic {

namespace {

using multipliers::Kind;
using multipliers::MultiplierField;
using multipliers::SymmetryClass;
using spectral::FrequencyGrid;

constexpr std::uint32_t kPseudo = 0b111;
constexpr std::array<std::uint32_t, 3> kVectorBlades{0b001, 0b010, 0b100};

// I3 e_k = sign * partner blade
struct DualBlade {
  std::uint32_t blade;
  double sign;
};

constexpr std::array<DualBlade, 3> make_duals() {
  std::array<DualBlade, 3> d{};
  for (std::size_t k = 0; k < 3; ++k) {
    d[k] = {kPseudo ^ kVectorBlades[k],
            static_cast<double>(ga::blade_product_sign(kPseudo, kVectorBlades[k]))};
  }
  return d;
}

constexpr auto kDuals = make_duals();

void require_grid(const Shape& shape, const MultiplierField& a) {
  require_same_shape(shape, a.grid().shape(), "signal/multiplier grid");
}

MultivectorField apply_multiplier(const MultivectorField& spectrum, const MultiplierField& a) {
  MultivectorField out(spectrum.shape(), Domain::frequency, 3);
  const auto& table = ga::AlgebraTable::of(3);
  for (std::size_t b = 0; b < spectrum.cell_count(); ++b) {
    table.multiply(a.values().cell(b), spectrum.cell(b), out.cell(b));
  }
  return out;
}

bool is_generic(SymmetryClass c) { return c != SymmetryClass::generalized; }

}  // namespace

const ScalarField& AnalyticDecomposition::orientation_angle() const {
  if (kind == Kind::scalar) {
    throw Error("orientation angle sigma is undefined for a scalar multiplier");
  }
  if (!sigma) throw Error("orientation angle sigma needs a generic-class multiplier");
  return *sigma;
}

const ScalarField& AnalyticDecomposition::elevation_angle() const {
  if (kind == Kind::scalar) {
    throw Error("elevation angle kappa is undefined for a scalar multiplier");
  }
  if (!kappa) throw Error("elevation angle kappa needs a generic-class multiplier");
  return *kappa;
}

ga::Multivector AnalyticDecomposition::unit_hilbert(std::size_t cell) const {
  if (!has_polar()) throw Error("unit Hilbert direction needs a generic-class multiplier");
  ga::Multivector u(3);
  if (kind == Kind::scalar) {
    const double im = (*fH_im)[cell];
    u[ga::BladeIndex{kPseudo}] = im > 0 ? 1.0 : (im < 0 ? -1.0 : 0.0);
    return u;
  }
  for (std::size_t k = 0; k < 3; ++k) {
    u[ga::BladeIndex{kDuals[k].blade}] = kDuals[k].sign * (*vhat)[k][cell];
  }
  return u;
}

MultivectorField extended_hilbert(const MultivectorField& g, const MultiplierField& a) {
  require_grid(g.shape(), a);
  if (g.domain() != Domain::spatial) throw Error("extended_hilbert expects a spatial field");
  return spectral::inverse_ft(apply_multiplier(spectral::forward_ft(g), a));
}

MultivectorField extended_hilbert(const ScalarField& f, const MultiplierField& a) {
  return extended_hilbert(lift(f), a);
}

MultivectorField analytic_signal(const ScalarField& f, const MultiplierField& a) {
  MultivectorField fA = lift(f) + extended_hilbert(f, a);
  fA *= 0.5;
  return fA;
}

Reconstruction reconstruct(const MultivectorField& fH, const MultiplierField& a) {
  MultivectorField g = extended_hilbert(fH, a);
  const std::array<std::uint32_t, 1> scalar{0};
  return {scalar_part(g), g.max_abs_outside(scalar)};
}

AnalyticDecomposition decompose(const ScalarField& f, const MultiplierField& a) {
  require_grid(f.shape, a);
  AnalyticDecomposition d;
  d.multiplier = a.name();
  d.kind = a.kind();
  d.symmetry = multipliers::classify(a);
  d.f = f;
  d.fH = extended_hilbert(f, a);
  d.fA = lift(f) + d.fH;
  d.fA *= 0.5;

  const std::size_t n = f.size();
  ScalarField norm = ScalarField::zeros(f.shape);
  if (d.kind == Kind::scalar) {
    d.fH_re = d.fH.component(ga::BladeIndex{0});
    d.fH_im = d.fH.component(ga::BladeIndex{kPseudo});
    for (std::size_t i = 0; i < n; ++i) norm[i] = std::abs((*d.fH_im)[i]);
  } else {
    VectorField3 V, W;
    for (std::size_t k = 0; k < 3; ++k) {
      W[k] = d.fH.component(ga::BladeIndex{kVectorBlades[k]});
      V[k] = d.fH.component(ga::BladeIndex{kDuals[k].blade});
      for (double& x : V[k].values) x *= kDuals[k].sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      norm[i] = std::sqrt(V[0][i] * V[0][i] + V[1][i] * V[1][i] + V[2][i] * V[2][i]);
    }
    d.V = std::move(V);
    d.W = std::move(W);
  }
  if (!is_generic(d.symmetry)) return d;

  const double zero = kZeroMagnitude * std::max(max_abs(f), 1.0);
  d.R = ScalarField::zeros(f.shape);
  d.theta = ScalarField::zeros(f.shape);
  d.invalid.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    (*d.R)[i] = std::hypot(f[i], norm[i]);
    // atan2 keeps R cos(theta) = f with R >= 0, including f < 0
    (*d.theta)[i] = (*d.R)[i] == 0.0 ? 0.0 : std::atan2(norm[i], f[i]);
    if (norm[i] <= zero) d.invalid[i] = 1;
  }
  if (d.kind == Kind::vector_pseudovector) {
    VectorField3 vhat{ScalarField::zeros(f.shape), ScalarField::zeros(f.shape),
                      ScalarField::zeros(f.shape)};
    d.sigma = ScalarField::zeros(f.shape);
    d.kappa = ScalarField::zeros(f.shape);
    const auto& V = *d.V;
    for (std::size_t i = 0; i < n; ++i) {
      if (d.invalid[i]) continue;
      for (std::size_t k = 0; k < 3; ++k) vhat[k][i] = V[k][i] / norm[i];
      (*d.sigma)[i] = std::atan2(V[1][i], V[0][i]);
      // asin(V3/|V|) written in the form that stays accurate near +-pi/2
      (*d.kappa)[i] = std::atan2(V[2][i], std::hypot(V[0][i], V[1][i]));
    }
    d.vhat = std::move(vhat);
  }
  d.fH_norm = std::move(norm);
  return d;
}

PartialTransforms partial_transforms(const ScalarField& f) {
  if (f.shape.size() != 2) throw Error("partial_transforms requires a 2-D field");
  const FrequencyGrid grid(f.shape);
  const MultivectorField spectrum = spectral::forward_ft(lift(f));
  const auto minus_i = ga::pseudoscalar(3) * -1.0;
  const auto& table = ga::AlgebraTable::of(3);

  // F^-1[mu F], times -I3 when mu is odd so that the result is real
  auto apply = [&](auto&& mu, bool odd) {
    MultivectorField G(f.shape, Domain::frequency, 3);
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (grid.is_exceptional(b)) continue;
      const double m = mu(grid.omega(b, 0), grid.omega(b, 1));
      auto in = spectrum.cell(b);
      auto out = G.cell(b);
      for (std::size_t k = 0; k < 8; ++k) out[k] = m * in[k];
    }
    MultivectorField g = spectral::inverse_ft(G);
    if (odd) {
      MultivectorField rotated(f.shape, Domain::spatial, 3);
      for (std::size_t i = 0; i < g.cell_count(); ++i) {
        table.multiply(minus_i.coeffs(), g.cell(i), rotated.cell(i));
      }
      g = std::move(rotated);
    }
    return scalar_part(g);
  };
  auto sgn = [](long w) { return w > 0 ? 1.0 : (w < 0 ? -1.0 : 0.0); };
  auto riesz = [](long wk, long w1, long w2) {
    return static_cast<double>(wk) / std::sqrt(static_cast<double>(w1 * w1 + w2 * w2));
  };

  PartialTransforms p;
  p.fH1 = apply([&](long w1, long) { return sgn(w1); }, true);
  p.fH2 = apply([&](long, long w2) { return sgn(w2); }, true);
  p.fHT = apply([&](long w1, long w2) { return sgn(w1) * sgn(w2); }, false);
  p.fR1 = apply([&](long w1, long w2) { return riesz(w1, w1, w2); }, true);
  p.fR2 = apply([&](long w1, long w2) { return riesz(w2, w1, w2); }, true);
  return p;
}

ScalarField reconstruct_from_orientation(const VectorField3& vhat, const MultiplierField& a) {
  const Shape& shape = vhat[0].shape;
  require_same_shape(shape, vhat[1].shape, "orientation component");
  require_same_shape(shape, vhat[2].shape, "orientation component");
  require_grid(shape, a);
  if (multipliers::classify(a) != SymmetryClass::ordinary) {
    throw Error("reconstruct_from_orientation needs an ordinary-class multiplier; '" + a.name() +
                "' is " + multipliers::to_string(multipliers::classify(a)));
  }
  MultivectorField g(shape, Domain::spatial, 3);
  for (std::size_t i = 0; i < cell_count(shape); ++i) {
    const double x = vhat[0][i], y = vhat[1][i], z = vhat[2][i];
    const double nrm = std::sqrt(x * x + y * y + z * z);
    if (nrm != 0.0 && std::abs(nrm - 1.0) > kOrientationUnitTolerance) {
      throw Error("orientation field is not unit length at cell " + std::to_string(i) +
                  " (|v| = " + std::to_string(nrm) + ")");
    }
    auto c = g.cell(i);
    c[kDuals[0].blade] = kDuals[0].sign * x;
    c[kDuals[1].blade] = kDuals[1].sign * y;
    c[kDuals[2].blade] = kDuals[2].sign * z;
  }
  return scalar_part(extended_hilbert(g, a));
}

AnalyticDecomposition classical_1d(const ScalarField& f) {
  if (f.shape.size() != 1) throw Error("classical_1d requires a 1-D signal");
  return decompose(f, multipliers::make_sign_1d(FrequencyGrid(f.shape)));
}

ExceptionalSplit remove_exceptional(const ScalarField& f, const MultiplierField& a) {
  require_grid(f.shape, a);
  MultivectorField spectrum = spectral::forward_ft(lift(f));
  for (std::size_t b = 0; b < spectrum.cell_count(); ++b) {
    if (a.is_exceptional(b)) continue;
    auto c = spectrum.cell(b);
    std::fill(c.begin(), c.end(), 0.0);
  }
  ExceptionalSplit s;
  s.removed = scalar_part(spectral::inverse_ft(spectrum));
  s.kept = f;
  for (std::size_t i = 0; i < f.size(); ++i) s.kept[i] -= s.removed[i];
  return s;
}

}  // namespace clifsig::analytic
